"""Assignment scoring for weighted clause / symmetric factor models.

All scores are unnormalized log-weights. A violated hard clause yields
``-inf``; a satisfied one contributes nothing.
"""

from __future__ import annotations

import math
from typing import Sequence

from scipy.special import expit

from app.domain.enums import Comparator, EvidenceKind
from app.domain.exceptions import ModelStructureError
from app.domain.models import Assignment, EvidencePredicate, Model, WeightedClause

NEG_INF = float("-inf")


def _check_length(m: Model, x: Sequence[bool]) -> None:
    if len(x) != m.num_vars:
        raise ModelStructureError(
            f"assignment has {len(x)} values, model has {m.num_vars} variables"
        )


def satisfies(clause: WeightedClause, x: Sequence[bool]) -> bool:
    for lit in clause.literals:
        if lit.var >= len(x):
            raise ModelStructureError(f"variable {lit.var} out of range for assignment")
        if bool(x[lit.var]) == lit.positive:
            return True
    return False


def log_score(m: Model, x: Sequence[bool]) -> float:
    _check_length(m, x)
    total = 0.0
    for clause in m.clauses:
        if satisfies(clause, x):
            if not clause.is_hard:
                total += clause.weight
        elif clause.is_hard:
            return NEG_INF
    for factor in m.factors:
        total += factor.count_table[sum(1 for v in factor.scope if x[v])]
    return total


def count_true(subset: Sequence[int], x: Sequence[bool]) -> int:
    return sum(1 for v in subset if x[v])


def compare(count: int, comparator: Comparator, bound: int) -> bool:
    if comparator == Comparator.EQ:
        return count == bound
    if comparator == Comparator.LE:
        return count <= bound
    if comparator == Comparator.GE:
        return count >= bound
    raise ValueError(f"unsupported comparator: {comparator}")


def predicate_holds(pred: EvidencePredicate, x: Sequence[bool]) -> bool:
    if pred.kind == EvidenceKind.TRUE:
        return True
    return compare(count_true(pred.subset, x), pred.comparator, pred.bound)


def evidence_holds(m: Model, x: Sequence[bool]) -> bool:
    _check_length(m, x)
    return predicate_holds(m.evidence, x)


def count_hard_clauses(m: Model) -> int:
    return sum(1 for clause in m.clauses if clause.is_hard)


def gibbs_conditional(m: Model, x: Sequence[bool], v: int) -> float:
    """P(x_v = True | all other variables), or NaN when both values are
    hard-forbidden."""
    base = list(x)
    base[v] = True
    on = log_score(m, base)
    base[v] = False
    off = log_score(m, base)
    if on == NEG_INF and off == NEG_INF:
        return math.nan
    # expit maps a -inf or +inf difference to exactly 0 or 1
    return float(expit(on - off))


def all_false(num_vars: int) -> Assignment:
    return (False,) * num_vars


def assignment_from_bits(bits: str) -> Assignment:
    cleaned = bits.replace(" ", "")
    if any(ch not in "01" for ch in cleaned):
        raise ModelStructureError(f"assignment bits must be 0/1, got {bits!r}")
    return tuple(ch == "1" for ch in cleaned)


def assignment_to_bits(x: Sequence[bool]) -> str:
    return "".join("1" if value else "0" for value in x)


def assignment_to_index(x: Sequence[bool]) -> int:
    """Pack an assignment into an integer; bit v holds variable v."""
    index = 0
    for v, value in enumerate(x):
        if value:
            index |= 1 << v
    return index


def assignment_from_index(index: int, num_vars: int) -> Assignment:
    return tuple(bool((index >> v) & 1) for v in range(num_vars))


__all__ = [
    "NEG_INF",
    "all_false",
    "assignment_from_bits",
    "assignment_from_index",
    "assignment_to_bits",
    "assignment_to_index",
    "compare",
    "count_hard_clauses",
    "count_true",
    "evidence_holds",
    "gibbs_conditional",
    "log_score",
    "predicate_holds",
    "satisfies",
]
