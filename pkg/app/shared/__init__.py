"""Shared cross-layer types and exceptions."""

from app.shared.exceptions import NotAPermutationError, PermutationDomainError

__all__ = ["NotAPermutationError", "PermutationDomainError"]
