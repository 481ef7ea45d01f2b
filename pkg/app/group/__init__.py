"""Permutation-group kernel."""

from app.group.chain import PermGroup, enumerate_elements, order, point_orbits, schreier_sims
from app.group.perm import Perm, compose, cycles, format_cycles, identity, inverse, is_identity
from app.group.product_replacement import Sampler, prng_sampler

__all__ = [
    "Perm",
    "PermGroup",
    "Sampler",
    "compose",
    "cycles",
    "enumerate_elements",
    "format_cycles",
    "identity",
    "inverse",
    "is_identity",
    "order",
    "point_orbits",
    "prng_sampler",
    "schreier_sims",
]
