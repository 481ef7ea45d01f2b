"""Domain enums."""

from enum import Enum


class EvidenceKind(str, Enum):
    TRUE = "true"
    CARDINALITY = "card"


class Comparator(str, Enum):
    EQ = "eq"
    LE = "le"
    GE = "ge"


class VertexKind(str, Enum):
    VARIABLE = "variable"
    FACTOR = "factor"
    PORT = "port"


class ChainKind(str, Enum):
    ORBIT_JUMP = "orbit_jump"
    LIFTED = "lifted"
    GIBBS = "gibbs"


class ProposalKind(str, Enum):
    EXACT = "exact"
    BURNSIDE = "burnside"


class ModelFamily(str, Enum):
    PIGEONHOLE = "pigeonhole"
    QUANTUM_PIGEONHOLE = "quantum-pigeonhole"
    PAIRWISE = "pairwise"
