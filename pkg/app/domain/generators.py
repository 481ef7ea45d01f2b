"""Benchmark model families: pigeonhole (hard and quantum) and pairwise."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from app.domain.constants import DEFAULT_SOFT_WEIGHT, HARD, MAX_VARIABLES
from app.domain.enums import ModelFamily
from app.domain.exceptions import ConfigurationError
from app.domain.models import ClauseLiteral, Model, SymFactor, WeightedClause


def pigeon_var(pigeon: int, hole: int, holes: int) -> int:
    return pigeon * holes + hole


def _negative_pair(a: int, b: int, weight) -> WeightedClause:
    return WeightedClause(
        weight=weight,
        literals=(ClauseLiteral(var=a, positive=False), ClauseLiteral(var=b, positive=False)),
    )


def gen_pigeonhole(
    n: int,
    m: int,
    soft_w: float = DEFAULT_SOFT_WEIGHT,
    hard: bool = True,
) -> Model:
    """Pigeons ``n`` into holes ``m``; ``hard=False`` gives the quantum variant
    where a pigeon may sit in several holes."""
    if n < 1 or m < 1:
        raise ConfigurationError(f"pigeonhole needs n >= 1 and m >= 1, got n={n}, m={m}")
    if n * m > MAX_VARIABLES:
        raise ConfigurationError(
            f"pigeonhole({n},{m}) needs {n * m} variables, budget is {MAX_VARIABLES}"
        )
    clauses: list[WeightedClause] = []
    if hard:
        for pigeon in range(n):
            for k, l in combinations(range(m), 2):
                clauses.append(
                    _negative_pair(pigeon_var(pigeon, k, m), pigeon_var(pigeon, l, m), HARD)
                )
    for hole in range(m):
        for k, l in combinations(range(n), 2):
            clauses.append(
                _negative_pair(pigeon_var(k, hole, m), pigeon_var(l, hole, m), float(soft_w))
            )
    return Model(num_vars=n * m, clauses=tuple(clauses))


def gen_pairwise(n: int, pair_table: Sequence[float], ev_table: Sequence[float]) -> Model:
    """Complete graph of identical symmetric pair factors plus one unary
    evidence factor on variable 0."""
    if n < 2:
        raise ConfigurationError(f"pairwise model needs n >= 2, got {n}")
    if n > MAX_VARIABLES:
        raise ConfigurationError(f"pairwise({n}) exceeds the variable budget {MAX_VARIABLES}")
    if len(pair_table) != 3 or len(ev_table) != 2:
        raise ConfigurationError("pair_table needs 3 entries and ev_table needs 2")
    factors = [
        SymFactor(scope=(i, j), count_table=tuple(float(v) for v in pair_table))
        for i, j in combinations(range(n), 2)
    ]
    factors.append(SymFactor(scope=(0,), count_table=tuple(float(v) for v in ev_table)))
    return Model(num_vars=n, factors=tuple(factors))


def generate_family(family: ModelFamily | str, size: int, **params) -> Model:
    """Dispatch used by the CLI ``generate`` and ``bench`` commands."""
    family = ModelFamily(family)
    if family == ModelFamily.PIGEONHOLE:
        return gen_pigeonhole(
            size, int(params.get("holes", 2)), float(params.get("soft_w", DEFAULT_SOFT_WEIGHT))
        )
    if family == ModelFamily.QUANTUM_PIGEONHOLE:
        return gen_pigeonhole(
            size,
            int(params.get("holes", 2)),
            float(params.get("soft_w", DEFAULT_SOFT_WEIGHT)),
            hard=False,
        )
    return gen_pairwise(
        size,
        params.get("pair_table", (0.0, 0.0, 0.0)),
        params.get("ev_table", (0.0, 0.0)),
    )


__all__ = ["gen_pairwise", "gen_pigeonhole", "generate_family", "pigeon_var"]
