"""Permutations as image tuples: ``p[i]`` is the image of point i.

Products read left to right: ``compose(a, b)`` applies ``a`` first, then
``b``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from app.shared.exceptions import NotAPermutationError, PermutationDomainError

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def is_identity(p: Sequence[int]) -> bool:
    return all(i == image for i, image in enumerate(p))


def check_perm(p: Sequence[int]) -> Perm:
    if sorted(p) != list(range(len(p))):
        raise NotAPermutationError(f"not a permutation: {list(p)}")
    return tuple(p)


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    if len(a) != len(b):
        raise PermutationDomainError(len(a), len(b))
    return tuple(b[i] for i in a)


def inverse(a: Sequence[int]) -> Perm:
    inv = [0] * len(a)
    for i, image in enumerate(a):
        inv[image] = i
    return tuple(inv)


def power(a: Sequence[int], k: int) -> Perm:
    result = identity(len(a))
    base = tuple(a) if k >= 0 else inverse(a)
    for _ in range(abs(k)):
        result = compose(result, base)
    return result


def cycles(a: Sequence[int], include_fixed: bool = False) -> list[tuple[int, ...]]:
    """Disjoint cycles, each starting at and ordered by its smallest point."""
    seen = [False] * len(a)
    out: list[tuple[int, ...]] = []
    for start in range(len(a)):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        nxt = a[start]
        while nxt != start:
            seen[nxt] = True
            cycle.append(nxt)
            nxt = a[nxt]
        if len(cycle) > 1 or include_fixed:
            out.append(tuple(cycle))
    return out


def from_cycles(n: int, cycle_list: Iterable[Sequence[int]]) -> Perm:
    images = list(range(n))
    for cycle in cycle_list:
        for i, point in enumerate(cycle):
            images[point] = cycle[(i + 1) % len(cycle)]
    return check_perm(images)


def format_cycles(a: Sequence[int]) -> str:
    parts = cycles(a)
    if not parts:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in parts)


def moved_points(a: Sequence[int]) -> list[int]:
    return [i for i, image in enumerate(a) if i != image]


def restrict(a: Sequence[int], points: int) -> Perm:
    """Action on the leading ``points`` points, which must be invariant."""
    images = tuple(a[i] for i in range(points))
    if any(image >= points for image in images):
        raise NotAPermutationError("leading points are not invariant")
    return images


__all__ = [
    "Perm",
    "check_perm",
    "compose",
    "cycles",
    "format_cycles",
    "from_cycles",
    "identity",
    "inverse",
    "is_identity",
    "moved_points",
    "power",
    "restrict",
]
