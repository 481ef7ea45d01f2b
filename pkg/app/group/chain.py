"""Stabilizer chains (base and strong generating set) via deterministic
Schreier-Sims.

Level ``i`` of the chain stores the strong generators fixing
``base[:i]`` pointwise and a transversal: for every point ``b`` of the
fundamental orbit of ``base[i]``, a coset representative mapping
``base[i]`` to ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from app.domain.exceptions import OrderExceedsCap
from app.group.perm import Perm, compose, identity, inverse, is_identity, moved_points
from app.shared.exceptions import PermutationDomainError


def _fixes_all(g: Perm, points: Sequence[int]) -> bool:
    return all(g[p] == p for p in points)


def _transversal(point: int, gens: Sequence[Perm], degree: int) -> dict[int, Perm]:
    reps: dict[int, Perm] = {point: identity(degree)}
    queue = [point]
    for p in queue:
        for g in gens:
            q = g[p]
            if q not in reps:
                reps[q] = compose(reps[p], g)
                queue.append(q)
    return reps


@dataclass
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    base: list[int] = field(default_factory=list)
    strong_generators: list[Perm] = field(default_factory=list)
    transversals: list[dict[int, Perm]] = field(default_factory=list)

    def level_generators(self, i: int) -> list[Perm]:
        prefix = self.base[:i]
        return [g for g in self.strong_generators if _fixes_all(g, prefix)]

    def _rebuild_from(self, start: int) -> None:
        del self.transversals[start:]
        for i in range(start, len(self.base)):
            self.transversals.append(
                _transversal(self.base[i], self.level_generators(i), self.degree)
            )

    def sift(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        """Strip ``g`` through levels ``start..``; returns the residue and the
        level where stripping stopped (``len(base)`` if it went through)."""
        for i in range(start, len(self.base)):
            beta = g[self.base[i]]
            rep = self.transversals[i].get(beta)
            if rep is None:
                return g, i
            g = compose(g, inverse(rep))
        return g, len(self.base)

    def order(self) -> int:
        total = 1
        for reps in self.transversals:
            total *= len(reps)
        return total

    def is_member(self, g: Sequence[int]) -> bool:
        if len(g) != self.degree:
            return False
        residue, level = self.sift(tuple(g))
        return level == len(self.base) and is_identity(residue)

    def fundamental_orbits(self) -> list[list[int]]:
        return [sorted(reps) for reps in self.transversals]

    def is_trivial(self) -> bool:
        return self.order() == 1


def _check_degrees(gens: Sequence[Sequence[int]], degree: int | None) -> int:
    sizes = {len(g) for g in gens}
    if degree is not None:
        sizes.add(degree)
    if len(sizes) > 1:
        low, high = min(sizes), max(sizes)
        raise PermutationDomainError(low, high)
    return sizes.pop() if sizes else 0


def schreier_sims(
    gens: Iterable[Sequence[int]],
    *,
    degree: int | None = None,
    base: Sequence[int] | None = None,
    known_strong: bool = False,
) -> PermGroup:
    """Build a stabilizer chain for the group generated by ``gens``.

    New base points are the smallest points moved by the element that needs
    them. With ``known_strong`` the generators are trusted to be strong
    relative to ``base`` (as the generators of an individualization-refinement
    search are relative to its first path) and no Schreier generators are
    sifted.
    """
    gens = [tuple(g) for g in gens]
    n = _check_degrees(gens, degree)
    strong = [g for g in gens if not is_identity(g)]
    group = PermGroup(degree=n, generators=tuple(gens), base=list(base or []))
    group.strong_generators = strong
    for g in strong:
        if _fixes_all(g, group.base):
            group.base.append(moved_points(g)[0])
    group._rebuild_from(0)
    if known_strong:
        return group

    i = len(group.base) - 1
    while i >= 0:
        restart_at = None
        level_gens = group.level_generators(i)
        reps = group.transversals[i]
        for beta in sorted(reps):
            u_beta = reps[beta]
            for s in level_gens:
                image = s[beta]
                schreier = compose(compose(u_beta, s), inverse(reps[image]))
                if is_identity(schreier):
                    continue
                residue, level = group.sift(schreier, i + 1)
                if is_identity(residue) and level == len(group.base):
                    continue
                if level == len(group.base):
                    group.base.append(moved_points(residue)[0])
                group.strong_generators.append(residue)
                group._rebuild_from(i + 1)
                restart_at = level
                break
            if restart_at is not None:
                break
        i = restart_at if restart_at is not None else i - 1
    return group


def order(group: PermGroup) -> int:
    return group.order()


def point_orbits(gens: Iterable[Sequence[int]], points: Iterable[int]) -> list[list[int]]:
    """Orbits of the generated group, intersected with ``points``; each orbit
    sorted, orbits ordered by their smallest member."""
    gens = [tuple(g) for g in gens]
    points = sorted(set(points))
    if not points:
        return []
    size = len(gens[0]) if gens else max(points) + 1
    parent = list(range(size))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in gens:
        for a, b in enumerate(g):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    classes: dict[int, list[int]] = {}
    for p in points:
        classes.setdefault(find(p), []).append(p)
    return sorted(classes.values(), key=lambda c: c[0])


def enumerate_elements(group: PermGroup, cap: int) -> list[Perm]:
    """Every element exactly once, as products of transversal elements
    ``u_{k-1} ... u_1 u_0`` (read left to right)."""
    total = group.order()
    if total > cap:
        raise OrderExceedsCap(total, cap)
    elements = [identity(group.degree)]
    for reps in reversed(group.transversals):
        elements = [compose(e, u) for e in elements for u in reps.values()]
    return elements


__all__ = [
    "PermGroup",
    "enumerate_elements",
    "order",
    "point_orbits",
    "schreier_sims",
]
