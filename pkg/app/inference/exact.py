"""Exact lifted inference by isomorph-pruned orbit generation.

Assignments are generated breadth first from all-false, one more true
variable per level. Each popped assignment is canonized; an unseen
certificate opens a new orbit record, and its augmentations (one per
variable orbit of the stabilizer that still has a false variable) form the
next level. Every orbit is reached because any orbit member with k+1 true
variables lies above some member with k true variables.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from scipy.special import logsumexp

from app.domain.enums import EvidenceKind
from app.domain.exceptions import (
    AllZeroMass,
    EvidenceNotInvariant,
    KernelInvariantError,
    NoSatisfyingState,
    NonDivisibleOrder,
)
from app.domain.models import Assignment, Model
from app.domain.scoring import NEG_INF, all_false, assignment_to_bits, evidence_holds, log_score
from app.graph.canon import AutResult, ModelSymmetry
from app.group.chain import PermGroup, point_orbits, schreier_sims
from app.group.perm import Perm
from app.infrastructure.logging import get_logger


@dataclass(frozen=True)
class OrbitRecord:
    representative: Assignment
    orbit_size: int
    log_score: float

    @property
    def bits(self) -> str:
        return assignment_to_bits(self.representative)

    @property
    def log_mass(self) -> float:
        """log(orbit size) + log score; -inf for zero-probability orbits."""
        if self.log_score == NEG_INF:
            return NEG_INF
        return math.log(self.orbit_size) + self.log_score


@dataclass
class CensusStats:
    """``certificate_calls`` counts every canonical-form search of a census:
    one per distinct frontier assignment plus the ``representative_calls``
    spent on relabeled model graphs. All-false and all-true are fixed by the
    whole group and need no representative search, which keeps the total
    within ``num_vars * num_orbits``."""

    expansions: int = 0
    certificate_calls: int = 0
    representative_calls: int = 0
    duplicates: int = 0
    levels: int = 0
    wall_time_s: float = 0.0


@dataclass(frozen=True)
class OrbitCensus:
    records: tuple[OrbitRecord, ...]
    aut_order: int
    num_vars: int
    variable_orbits: tuple[tuple[int, ...], ...] = ()
    stats: CensusStats = field(default_factory=CensusStats)

    @property
    def num_orbits(self) -> int:
        return len(self.records)

    @property
    def total_size(self) -> int:
        return sum(r.orbit_size for r in self.records)


def stabilizer_order(aut: AutResult, degree: int, full: bool = False) -> int:
    """Order of the group found by a canonization. ``full`` re-derives the
    chain by sifting Schreier generators instead of trusting the search base."""
    if full:
        return schreier_sims(aut.generators, degree=degree).order()
    return schreier_sims(
        aut.generators, degree=degree, base=aut.base, known_strong=True
    ).order()


def divide_order(group_order: int, stab_order: int) -> int:
    size, remainder = divmod(group_order, stab_order)
    if remainder:
        raise NonDivisibleOrder(
            f"stabilizer order {stab_order} does not divide group order {group_order}"
        )
    return size


def orbit_size(
    m: Model,
    autG: PermGroup,
    x: Sequence[bool],
    *,
    symmetry: ModelSymmetry | None = None,
) -> int:
    symmetry = symmetry or ModelSymmetry(m)
    aut = symmetry.stabilizer(x)
    return divide_order(autG.order(), stabilizer_order(aut, symmetry.graph.n_vertices))


def _augment_points(x: Sequence[bool], var_orbits: Iterable[Iterable[int]]) -> list[int]:
    points: list[int] = []
    for orbit in var_orbits:
        false_vars = [v for v in orbit if not x[v]]
        if false_vars:
            points.append(min(false_vars))
    return points


def augmentations(x: Sequence[bool], var_orbits: Iterable[Iterable[int]]) -> list[Assignment]:
    out: list[Assignment] = []
    for v in _augment_points(x, var_orbits):
        flipped = list(x)
        flipped[v] = True
        out.append(tuple(flipped))
    return out


def generate_orbits(
    m: Model,
    *,
    prune: bool = True,
    threads: int = 1,
    automorphism_pruning: bool = True,
    debug_checks: bool = False,
    symmetry: ModelSymmetry | None = None,
) -> OrbitCensus:
    """Full orbit census of ``m`` under the automorphisms of its induced graph.

    ``prune`` restricts augmentations to one per variable orbit of the
    stabilizer; without it every false variable is flipped. A child search
    is seeded with the parent stabilizer generators that fix the flipped
    variable.
    """
    logger = get_logger()
    started = time.perf_counter()
    symmetry = symmetry or ModelSymmetry(m, prune=automorphism_pruning)
    n = m.num_vars
    degree = symmetry.graph.n_vertices
    aut_order = symmetry.aut_order
    stats = CensusStats()
    representative_base = symmetry.representative_calls
    stabilizer_calls = 0
    visited: set[bytes] = set()
    records: list[OrbitRecord] = []
    # one level holds assignments of equal weight, so per-level dedupe is enough
    frontier: dict[Assignment, tuple[Perm, ...]] = {all_false(n): ()}
    logger.stage_start("generate_orbits", num_vars=n, aut_order=str(aut_order))

    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier:
            stats.levels += 1
            level = list(frontier)
            if pool is None:
                results = [symmetry.stabilizer(x, frontier[x]) for x in level]
            else:
                # map() yields in submission order, which keeps records deterministic
                results = list(pool.map(symmetry.stabilizer, level, [frontier[x] for x in level]))
            stabilizer_calls += len(level)
            next_frontier: dict[Assignment, tuple[Perm, ...]] = {}
            for x, aut in zip(level, results):
                if aut.certificate in visited:
                    stats.duplicates += 1
                    continue
                visited.add(aut.certificate)
                stats.expansions += 1
                canonized = symmetry.canonize(x, aut)
                stab_order = stabilizer_order(aut, degree, full=debug_checks)
                if debug_checks and stab_order != aut.group_order:
                    raise KernelInvariantError(
                        f"chain order {stab_order} != search order {aut.group_order}"
                    )
                size = divide_order(aut_order, stab_order)
                records.append(
                    OrbitRecord(
                        representative=canonized.representative,
                        orbit_size=size,
                        log_score=log_score(m, x),
                    )
                )
                if prune:
                    var_orbits = point_orbits(aut.generators, range(n))
                else:
                    var_orbits = [[v] for v in range(n)]
                for v in _augment_points(x, var_orbits):
                    child = list(x)
                    child[v] = True
                    child = tuple(child)
                    if child not in next_frontier:
                        next_frontier[child] = tuple(gen for gen in aut.generators if gen[v] == v)
            logger.counter(
                "bfs_level",
                stats.levels,
                frontier=len(level),
                orbits=len(records),
            )
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown()

    stats.representative_calls = symmetry.representative_calls - representative_base
    stats.certificate_calls = stabilizer_calls + stats.representative_calls
    stats.wall_time_s = time.perf_counter() - started
    census = OrbitCensus(
        records=tuple(records),
        aut_order=aut_order,
        num_vars=n,
        variable_orbits=tuple(
            tuple(orbit) for orbit in point_orbits(symmetry.root.generators, range(n))
        ),
        stats=stats,
    )
    if census.total_size != 2**n:
        raise KernelInvariantError(f"orbit sizes sum to {census.total_size}, expected 2^{n}")
    logger.stage_end(
        "generate_orbits",
        orbits=census.num_orbits,
        certificate_calls=stats.certificate_calls,
        expansions=stats.expansions,
    )
    return census


def _logsumexp(values: Sequence[float]) -> float:
    finite = [v for v in values if v != NEG_INF]
    if not finite:
        return NEG_INF
    return float(logsumexp(finite))


def partition_function(census: OrbitCensus) -> float:
    """log Z."""
    log_z = _logsumexp([r.log_mass for r in census.records])
    if log_z == NEG_INF:
        raise AllZeroMass("every orbit has zero probability")
    return log_z


def check_evidence_invariant(m: Model, gens: Iterable[Sequence[int]]) -> None:
    if m.evidence.kind == EvidenceKind.TRUE:
        return
    subset = set(m.evidence.subset)
    for gen in gens:
        image = {gen[v] for v in subset}
        if image != subset:
            raise EvidenceNotInvariant(
                f"evidence subset {sorted(subset)} is not closed under an automorphism"
            )


def _census_for(m: Model, census: OrbitCensus | None, symmetry: ModelSymmetry | None):
    symmetry = symmetry or ModelSymmetry(m)
    check_evidence_invariant(m, symmetry.root.generators)
    if census is None:
        census = generate_orbits(m, symmetry=symmetry)
    return census


def prob_evidence(
    m: Model,
    census: OrbitCensus | None = None,
    *,
    symmetry: ModelSymmetry | None = None,
) -> float:
    census = _census_for(m, census, symmetry)
    log_z = partition_function(census)
    if m.evidence.kind == EvidenceKind.TRUE:
        return 1.0
    log_p = _logsumexp(
        [r.log_mass for r in census.records if evidence_holds(m, r.representative)]
    )
    if log_p == NEG_INF:
        return 0.0
    return math.exp(log_p - log_z)


def mpe(
    m: Model,
    census: OrbitCensus | None = None,
    *,
    symmetry: ModelSymmetry | None = None,
) -> tuple[Assignment, float]:
    census = _census_for(m, census, symmetry)
    candidates = [
        r
        for r in census.records
        if r.log_score != NEG_INF and evidence_holds(m, r.representative)
    ]
    if not candidates:
        raise NoSatisfyingState("no positive-probability state satisfies the evidence")
    best = min(candidates, key=lambda r: (-r.log_score, r.bits))
    return best.representative, best.log_score


def marginals(census: OrbitCensus) -> list[float]:
    """P(x_v = True) per variable.

    Within an orbit, the share of members with v true equals the share of
    true variables of the representative inside v's variable orbit.
    """
    log_z = partition_function(census)
    result = [0.0] * census.num_vars
    for record in census.records:
        if record.log_mass == NEG_INF:
            continue
        weight = math.exp(record.log_mass - log_z)
        for orbit in census.variable_orbits:
            share = sum(1 for v in orbit if record.representative[v]) / len(orbit)
            if share:
                for v in orbit:
                    result[v] += weight * share
    return result


def census_to_jsonl(census: OrbitCensus) -> str:
    """One JSON object per record; orbit sizes as decimal strings and
    zero-probability scores as null."""
    lines = []
    for record in census.records:
        score = None if record.log_score == NEG_INF else record.log_score
        lines.append(
            json.dumps(
                {
                    "representative_bits": record.bits,
                    "orbit_size": str(record.orbit_size),
                    "log_score": score,
                }
            )
        )
    return "".join(line + "\n" for line in lines)


def write_census_jsonl(census: OrbitCensus, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(census_to_jsonl(census), encoding="utf-8")
    return path


__all__ = [
    "CensusStats",
    "OrbitCensus",
    "OrbitRecord",
    "augmentations",
    "census_to_jsonl",
    "check_evidence_invariant",
    "divide_order",
    "generate_orbits",
    "marginals",
    "mpe",
    "orbit_size",
    "partition_function",
    "prob_evidence",
    "stabilizer_order",
    "write_census_jsonl",
]
