"""Canonical labeling and automorphism groups of colored graphs.

Individualization-refinement search: refine to an equitable partition,
branch on the members of the first smallest non-singleton cell, and take the
lexicographically smallest leaf certificate. Leaves with equal certificates
yield automorphisms. Two prunings keep symmetric graphs cheap:

* a child is skipped when it lies in the orbit of an already explored
  sibling under the automorphisms found so far that fix the node's path;
* a leaf equivalent to the first leaf abandons the whole subtree back to the
  node where its path left the first path.

The first path doubles as a base: the generators are strong relative to it
and the group order is the product of the first-path orbit sizes.

Callers may seed the search with automorphisms they already know; seeds
only widen the orbit pruning and never change the certificate or the
canonical labeling. When the group order is known up front and equals the
product of the target cell sizes along the first path, every leaf is
equivalent to the first one and the search stops there.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, replace
from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

from app.domain.exceptions import KernelInvariantError
from app.domain.models import Assignment, Model
from app.graph.colored_graph import ColoredGraph
from app.graph.refine import Partition, refine
from app.graph.symgraph import apply_to_assignment, encode_assignment, induce
from app.group.chain import PermGroup, schreier_sims
from app.group.perm import Perm, identity, inverse

Certificate = bytes


@dataclass(frozen=True)
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    automorphisms: int = 0


@dataclass(frozen=True)
class AutResult:
    generators: tuple[Perm, ...]
    certificate: Certificate
    canonical_labeling: Perm
    base: tuple[int, ...] = ()
    group_order: int = 1
    stats: SearchStats = field(default_factory=SearchStats)


def certificate_of(g: ColoredGraph, lab: Sequence[int]) -> Certificate:
    """Vertex count, colors in canonical order (four bytes each), then the
    upper-triangular adjacency bits of the relabeled graph (row-major)."""
    n = g.n_vertices
    order = np.asarray(lab, dtype=np.int64)
    colors = g.color_array if g.color_array is not None else np.asarray(g.colors, dtype=np.int64)
    edges = g.edge_array if g.edge_array is not None else np.asarray(g.edges(), dtype=np.int64)
    bits = np.zeros(n * (n - 1) // 2, dtype=np.uint8)
    if edges.size:
        pos = np.empty(n, dtype=np.int64)
        pos[order] = np.arange(n, dtype=np.int64)
        ends = pos[edges.reshape(-1, 2)]
        lo = ends.min(axis=1)
        hi = ends.max(axis=1)
        bits[lo * n - lo * (lo + 1) // 2 + (hi - lo - 1)] = 1
    header = n.to_bytes(4, "big")
    return header + colors[order].astype(">u4").tobytes() + np.packbits(bits).tobytes()


def _orbit_of(points: Iterable[int], gens: Sequence[Perm]) -> set[int]:
    seen = set(points)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for gen in gens:
            q = gen[p]
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def _fixes(gen: Perm, points: Sequence[int]) -> bool:
    return all(gen[p] == p for p in points)


class _Search:
    def __init__(
        self,
        g: ColoredGraph,
        prune: bool,
        seeds: Iterable[Sequence[int]] = (),
        known_order: int | None = None,
    ):
        self.g = g
        self.prune = prune
        self.known_order = known_order
        self.first_lab: list[int] | None = None
        self.first_cert: bytes | None = None
        self.best_lab: list[int] | None = None
        self.best_cert: bytes | None = None
        self.generators: list[Perm] = []
        self._seen_generators: set[Perm] = set()
        self.first_path: list[int] = []
        self.first_cells: list[int] = []
        self.orbit_sizes: list[int] = []
        self.shortcut = False
        self.nodes = 0
        self.leaves = 0
        for gen in seeds:
            self._add_generator(tuple(gen))

    def run(self) -> AutResult:
        root = refine(self.g, Partition.from_colors(self.g.colors), in_place=True)
        self._visit(root, path=[], on_first=True, diverge=-1)
        if self.shortcut:
            order = self.known_order
        else:
            order = 1
            for size in self.orbit_sizes:
                order *= size
        labeling = [0] * self.g.n_vertices
        for i, v in enumerate(self.best_lab):
            labeling[v] = i
        return AutResult(
            generators=tuple(self.generators),
            certificate=self.best_cert,
            canonical_labeling=tuple(labeling),
            base=tuple(self.first_path),
            group_order=order,
            stats=SearchStats(self.nodes, self.leaves, len(self.generators)),
        )

    def _add_generator(self, perm: Perm) -> None:
        if perm in self._seen_generators or all(i == p for i, p in enumerate(perm)):
            return
        self._seen_generators.add(perm)
        self.generators.append(perm)

    def _record(self, src: list[int], dst: list[int]) -> None:
        gamma = [0] * len(src)
        for a, b in zip(src, dst):
            gamma[a] = b
        self._add_generator(tuple(gamma))

    def _leaf(self, p: Partition, level: int, diverge: int) -> int:
        self.leaves += 1
        cert = certificate_of(self.g, p.lab)
        if self.first_cert is None:
            self.first_cert = self.best_cert = cert
            self.first_lab = self.best_lab = p.lab[:]
            if self.known_order is not None and _product(self.first_cells) == self.known_order:
                # every target cell is a single orbit, so all leaves match this one
                self.shortcut = True
                return -1
            return level
        if cert == self.first_cert:
            self._record(self.first_lab, p.lab)
            return diverge if self.prune else level
        if cert == self.best_cert:
            self._record(self.best_lab, p.lab)
        elif cert < self.best_cert:
            self.best_cert = cert
            self.best_lab = p.lab[:]
        return level

    def _visit(self, p: Partition, path: list[int], on_first: bool, diverge: int) -> int:
        self.nodes += 1
        level = len(path)
        if p.is_discrete():
            return self._leaf(p, level, diverge)
        start = p.target_cell()
        members = sorted(p.lab[start : p.end[start]])
        if on_first:
            self.first_path.append(members[0])
            self.first_cells.append(len(members))
            self.orbit_sizes.append(1)
        # automorphisms fixing the path map explored subtrees onto pruned ones
        fixing: list[Perm] = []
        scanned = 0
        covered: set[int] = set()
        explored: list[int] = []
        for v in members:
            if self.prune and explored:
                if scanned < len(self.generators):
                    fresh = [gen for gen in self.generators[scanned:] if _fixes(gen, path)]
                    scanned = len(self.generators)
                    if fresh:
                        fixing.extend(fresh)
                        covered = _orbit_of(explored, fixing)
                if v in covered:
                    continue
            child, singleton = p.individualize(v)
            child = refine(self.g, child, [singleton], in_place=True)
            first_child = on_first and v == members[0]
            # level at which this path leaves the first path
            child_diverge = level if on_first and not first_child else diverge
            back = self._visit(child, path + [v], first_child, child_diverge)
            explored.append(v)
            if back < level:
                return back
            if v not in covered:
                covered |= _orbit_of((v,), fixing)
        if on_first:
            fixing.extend(gen for gen in self.generators[scanned:] if _fixes(gen, path))
            self.orbit_sizes[level] = len(_orbit_of((members[0],), fixing) & set(members))
        return level


def _product(values: Iterable[int]) -> int:
    out = 1
    for value in values:
        out *= value
    return out


def canonical_form(
    g: ColoredGraph,
    prune: bool = True,
    *,
    seeds: Iterable[Sequence[int]] = (),
    known_order: int | None = None,
) -> AutResult:
    """``seeds`` must be automorphisms of ``g``; ``known_order`` must be the
    order of its full automorphism group. With the first-path shortcut the
    generators of the result are the seeds only."""
    return _Search(g, prune, seeds, known_order).run()


def brute_force_automorphisms(g: ColoredGraph) -> list[Perm]:
    """All color automorphisms by exhaustive search (small graphs only)."""
    n = g.n_vertices
    result = []
    for perm in permutations(range(n)):
        if g.is_automorphism(perm):
            result.append(tuple(perm))
    return result


def brute_force_isomorphic(g: ColoredGraph, h: ColoredGraph) -> bool:
    if g.n_vertices != h.n_vertices or sorted(g.colors) != sorted(h.colors):
        return False
    if g.num_edges != h.num_edges:
        return False
    for perm in permutations(range(g.n_vertices)):
        if any(g.colors[v] != h.colors[perm[v]] for v in range(g.n_vertices)):
            continue
        if all(h.has_edge(perm[u], perm[w]) for u, w in g.edges()):
            return True
    return False


@dataclass(frozen=True)
class CanonizedAssignment:
    """``witness`` is an automorphism of the model graph carrying the input
    assignment onto ``representative``; ``aut`` is the search result for the
    assignment-encoded graph (its generators generate the stabilizer)."""

    representative: Assignment
    witness: Perm
    aut: AutResult


class ModelSymmetry:
    """Induced graph of a model, its automorphism group and canonization of
    assignments against it.

    The representative of x is obtained by double canonization: the
    canonical labeling of encode(x) fixes a relabeled copy U of the model
    graph that depends only on the orbit of x, and canonizing U maps it onto
    the canonical model graph. Composing both with the inverse root labeling
    gives an automorphism of the model graph.

    ``stabilizer_calls`` and ``representative_calls`` count the searches run
    on encoded assignments and on relabeled model graphs. Assignments whose
    stabilizer is the whole group are their own representatives and cost no
    second search.
    """

    def __init__(self, m: Model, prune: bool = True):
        self.model = m
        self.prune = prune
        self.graph, self.vertex_map = induce(m)
        self.root = canonical_form(self.graph, prune)
        self.group: PermGroup = schreier_sims(
            self.root.generators,
            degree=self.graph.n_vertices,
            base=self.root.base,
            known_strong=True,
        )
        self._root_inverse = inverse(self.root.canonical_labeling)
        self._unsplit_labelings: dict[bytes, Perm] = {}
        self._lock = threading.Lock()
        self.stabilizer_calls = 0
        self.representative_calls = 0

    @property
    def num_vars(self) -> int:
        return self.model.num_vars

    @property
    def aut_order(self) -> int:
        return self.group.order()

    def encode(self, x: Sequence[bool]) -> ColoredGraph:
        return encode_assignment(self.model, self.graph, x)

    def stabilizer(self, x: Sequence[bool], seeds: Iterable[Sequence[int]] = ()) -> AutResult:
        """Search result for encode(x). ``seeds`` must fix x; the certificate
        leads with the number of true variables."""
        result = canonical_form(self.encode(x), self.prune, seeds=seeds)
        with self._lock:
            self.stabilizer_calls += 1
        # without factors all-false and all-true encode to the same graph
        weight = sum(1 for value in x if value).to_bytes(4, "big")
        return replace(result, certificate=weight + result.certificate)

    def _unsplit_labeling(self, encoded: AutResult) -> Perm:
        with self._lock:
            cached = self._unsplit_labelings.get(encoded.certificate)
        if cached is not None:
            return cached
        lab = encoded.canonical_labeling
        relabeled = self.graph.relabeled(lab)
        seeds = []
        for gen in self.root.generators:
            conjugate = [0] * len(gen)
            for v, image in enumerate(gen):
                conjugate[lab[v]] = lab[image]
            seeds.append(tuple(conjugate))
        result = canonical_form(relabeled, self.prune, seeds=seeds, known_order=self.aut_order)
        if result.certificate != self.root.certificate:
            raise KernelInvariantError("relabeled model graph is not isomorphic to the model graph")
        with self._lock:
            self.representative_calls += 1
            self._unsplit_labelings[encoded.certificate] = result.canonical_labeling
        return result.canonical_labeling

    def canonize(self, x: Sequence[bool], aut: AutResult | None = None) -> CanonizedAssignment:
        if aut is None:
            aut = self.stabilizer(x)
        if aut.group_order == self.aut_order:
            return CanonizedAssignment(
                representative=tuple(bool(value) for value in x),
                witness=identity(self.graph.n_vertices),
                aut=aut,
            )
        unsplit = self._unsplit_labeling(aut)
        lab_x = aut.canonical_labeling
        witness = tuple(self._root_inverse[unsplit[lab_x[v]]] for v in range(self.graph.n_vertices))
        representative = apply_to_assignment(witness, x)
        return CanonizedAssignment(representative=representative, witness=witness, aut=aut)


def canonize_assignment(
    m: Model, x: Sequence[bool], symmetry: ModelSymmetry | None = None
) -> CanonizedAssignment:
    symmetry = symmetry or ModelSymmetry(m)
    return symmetry.canonize(x)


def canonical_assignment(
    m: Model, x: Sequence[bool], symmetry: ModelSymmetry | None = None
) -> Assignment:
    return canonize_assignment(m, x, symmetry).representative


__all__ = [
    "AutResult",
    "CanonizedAssignment",
    "Certificate",
    "ModelSymmetry",
    "SearchStats",
    "brute_force_automorphisms",
    "brute_force_isomorphic",
    "canonical_assignment",
    "canonical_form",
    "canonize_assignment",
    "certificate_of",
]
