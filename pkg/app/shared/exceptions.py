"""Shared (non-domain) exceptions raised by the permutation layer."""

from app.domain.exceptions import DomainError


class PermutationDomainError(DomainError):
    """Permutations act on different point domains."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"permutation degrees differ: {left} vs {right}")


class NotAPermutationError(DomainError):
    """Image list is not a bijection on [0, n)."""
