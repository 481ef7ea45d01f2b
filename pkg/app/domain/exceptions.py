"""Domain semantic exceptions.

Every error carries the process exit code the CLI reports for it:
2 for malformed input, 3 for infeasible or invariant failures, 4 for
resource caps.
"""


class DomainError(Exception):
    """Base domain exception."""

    exit_code = 3


class ModelStructureError(DomainError):
    """Raised when a model references variables or tables inconsistently."""

    exit_code = 2


class ConfigurationError(DomainError):
    """Raised for generator or engine parameters outside their valid range."""

    exit_code = 2


class EvidenceNotInvariant(DomainError):
    """Evidence subset is not closed under the model's automorphisms."""


class NonDivisibleOrder(DomainError):
    """Stabilizer order does not divide the group order (kernel bug)."""


class AllZeroMass(DomainError):
    """Every state of the model has zero probability."""


class NoSatisfyingState(DomainError):
    """No state with positive probability satisfies the evidence."""


class InitViolatesHard(DomainError):
    """Gibbs-based chains cannot start from a zero-probability state."""


class KernelInvariantError(DomainError):
    """An internal invariant of a search or sampling kernel was violated."""


class OrderExceedsCap(DomainError):
    """Group is too large to enumerate element by element."""

    exit_code = 4

    def __init__(self, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"group order {order} exceeds enumeration cap {cap}")


class StateSpaceTooLarge(DomainError):
    """State space exceeds the configured brute-force cap."""

    exit_code = 4

    def __init__(self, num_vars: int, cap: int):
        self.num_vars = num_vars
        self.cap = cap
        super().__init__(f"2^{num_vars} states exceed the cap of 2^{cap}")
