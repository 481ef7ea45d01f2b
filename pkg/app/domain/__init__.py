"""Domain package exports."""

from app.domain.constants import HARD
from app.domain.enums import (
    ChainKind,
    Comparator,
    EvidenceKind,
    ModelFamily,
    ProposalKind,
    VertexKind,
)
from app.domain.exceptions import (
    AllZeroMass,
    ConfigurationError,
    DomainError,
    EvidenceNotInvariant,
    InitViolatesHard,
    KernelInvariantError,
    ModelStructureError,
    NoSatisfyingState,
    NonDivisibleOrder,
    OrderExceedsCap,
    StateSpaceTooLarge,
)
from app.domain.generators import gen_pairwise, gen_pigeonhole, generate_family
from app.domain.models import (
    Assignment,
    ClauseLiteral,
    EvidencePredicate,
    Model,
    SymFactor,
    WeightedClause,
)
from app.domain.scoring import evidence_holds, log_score, satisfies

__all__ = [
    "AllZeroMass",
    "Assignment",
    "ChainKind",
    "ClauseLiteral",
    "Comparator",
    "ConfigurationError",
    "DomainError",
    "EvidenceKind",
    "EvidenceNotInvariant",
    "EvidencePredicate",
    "HARD",
    "InitViolatesHard",
    "KernelInvariantError",
    "Model",
    "ModelFamily",
    "ModelStructureError",
    "NoSatisfyingState",
    "NonDivisibleOrder",
    "OrderExceedsCap",
    "ProposalKind",
    "StateSpaceTooLarge",
    "SymFactor",
    "VertexKind",
    "WeightedClause",
    "evidence_holds",
    "gen_pairwise",
    "gen_pigeonhole",
    "generate_family",
    "log_score",
    "satisfies",
]
