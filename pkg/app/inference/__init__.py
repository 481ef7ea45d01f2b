"""Exact lifted inference and orbit-jump sampling."""

from app.inference.exact import (
    OrbitCensus,
    OrbitRecord,
    generate_orbits,
    marginals,
    mpe,
    partition_function,
    prob_evidence,
)
from app.inference.sampler import ChainConfig, ChainResult, ChainState, run_chain

__all__ = [
    "ChainConfig",
    "ChainResult",
    "ChainState",
    "OrbitCensus",
    "OrbitRecord",
    "generate_orbits",
    "marginals",
    "mpe",
    "partition_function",
    "prob_evidence",
    "run_chain",
]
