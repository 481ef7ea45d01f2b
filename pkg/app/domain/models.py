"""Pydantic domain models."""

from __future__ import annotations

import math
from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.domain.constants import HARD
from app.domain.enums import Comparator, EvidenceKind
from app.domain.exceptions import ModelStructureError

VarId = int
Assignment = tuple[bool, ...]
Weight = Union[float, Literal["hard"]]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True)


class ClauseLiteral(_Frozen):
    var: VarId
    positive: bool = True

    @field_validator("var")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ModelStructureError(f"negative variable id {value}")
        return value


class WeightedClause(_Frozen):
    weight: Weight = 0.0
    literals: tuple[ClauseLiteral, ...]

    @field_validator("weight")
    @classmethod
    def _finite_weight(cls, value: Weight) -> Weight:
        if value == HARD:
            return value
        if not math.isfinite(float(value)):
            raise ModelStructureError(f"clause weight must be finite or hard, got {value!r}")
        return float(value)

    @model_validator(mode="after")
    def _check_literals(self) -> "WeightedClause":
        if not self.literals:
            raise ModelStructureError("clause must have at least one literal")
        seen = [lit.var for lit in self.literals]
        if len(set(seen)) != len(seen):
            raise ModelStructureError(f"duplicate variable in clause: {sorted(seen)}")
        return self

    @property
    def is_hard(self) -> bool:
        return self.weight == HARD

    @property
    def arity(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> tuple[VarId, ...]:
        return tuple(lit.var for lit in self.literals)

    @classmethod
    def of(cls, weight: Weight, *signed: int) -> "WeightedClause":
        """Build from 1-based signed literals, as written in model files."""
        literals = tuple(
            ClauseLiteral(var=abs(lit) - 1, positive=lit > 0) for lit in signed
        )
        return cls(weight=weight, literals=literals)


class SymFactor(_Frozen):
    scope: tuple[VarId, ...]
    count_table: tuple[float, ...]

    @model_validator(mode="after")
    def _check_table(self) -> "SymFactor":
        if not self.scope:
            raise ModelStructureError("factor scope must be non-empty")
        if len(set(self.scope)) != len(self.scope):
            raise ModelStructureError(f"duplicate variable in factor scope: {list(self.scope)}")
        if len(self.count_table) != len(self.scope) + 1:
            raise ModelStructureError(
                f"count table needs {len(self.scope) + 1} entries, got {len(self.count_table)}"
            )
        if not all(math.isfinite(v) for v in self.count_table):
            raise ModelStructureError("count table entries must be finite")
        return self

    @property
    def arity(self) -> int:
        return len(self.scope)


class EvidencePredicate(_Frozen):
    kind: EvidenceKind = EvidenceKind.TRUE
    subset: tuple[VarId, ...] = ()
    comparator: Comparator = Comparator.EQ
    bound: int = 0

    @model_validator(mode="after")
    def _check_subset(self) -> "EvidencePredicate":
        if self.kind == EvidenceKind.TRUE:
            return self
        if len(set(self.subset)) != len(self.subset):
            raise ModelStructureError("evidence subset has duplicate variables")
        if not 0 <= self.bound <= len(self.subset):
            raise ModelStructureError(
                f"evidence bound {self.bound} outside [0, {len(self.subset)}]"
            )
        return self

    @classmethod
    def always(cls) -> "EvidencePredicate":
        return cls()

    @classmethod
    def cardinality(
        cls, subset: tuple[VarId, ...] | list[VarId], comparator: Comparator, bound: int
    ) -> "EvidencePredicate":
        return cls(
            kind=EvidenceKind.CARDINALITY,
            subset=tuple(subset),
            comparator=comparator,
            bound=bound,
        )


class Model(_Frozen):
    num_vars: int
    clauses: tuple[WeightedClause, ...] = ()
    factors: tuple[SymFactor, ...] = ()
    evidence: EvidencePredicate = Field(default_factory=EvidencePredicate)

    @model_validator(mode="after")
    def _check_ranges(self) -> "Model":
        if self.num_vars < 1:
            raise ModelStructureError("a model needs at least one variable")
        referenced: list[int] = []
        for clause in self.clauses:
            referenced.extend(clause.variables)
        for factor in self.factors:
            referenced.extend(factor.scope)
        if self.evidence.kind == EvidenceKind.CARDINALITY:
            referenced.extend(self.evidence.subset)
        bad = sorted({v for v in referenced if v >= self.num_vars})
        if bad:
            raise ModelStructureError(
                f"variables {bad} out of range for a model with {self.num_vars} variables"
            )
        return self

    def with_evidence(self, evidence: EvidencePredicate) -> "Model":
        return self.model_copy(update={"evidence": evidence})


__all__ = [
    "Assignment",
    "ClauseLiteral",
    "EvidencePredicate",
    "Model",
    "SymFactor",
    "VarId",
    "WeightedClause",
]
