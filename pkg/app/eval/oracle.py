"""Brute-force ground truth over all 2^N assignments.

State ``i`` is the assignment whose variable v is bit v of ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.special import logsumexp

from app.domain.constants import BRUTE_FORCE_CAP
from app.domain.exceptions import AllZeroMass, StateSpaceTooLarge
from app.domain.models import Assignment, Model
from app.domain.scoring import assignment_from_index, assignment_to_bits
from app.graph.symgraph import variable_action


def _check_cap(num_vars: int, cap: int) -> None:
    if num_vars > cap:
        raise StateSpaceTooLarge(num_vars, cap)


def state_matrix(num_vars: int) -> np.ndarray:
    """Boolean matrix of shape (2^N, N); row i is state i."""
    index = np.arange(2**num_vars, dtype=np.int64)
    return ((index[:, None] >> np.arange(num_vars, dtype=np.int64)) & 1).astype(bool)


def score_all_states(m: Model, cap: int = BRUTE_FORCE_CAP) -> np.ndarray:
    """Vector of log-scores of every state, -inf where a hard clause fails."""
    _check_cap(m.num_vars, cap)
    states = state_matrix(m.num_vars)
    scores = np.zeros(states.shape[0])
    feasible = np.ones(states.shape[0], dtype=bool)
    for clause in m.clauses:
        satisfied = np.zeros(states.shape[0], dtype=bool)
        for lit in clause.literals:
            satisfied |= states[:, lit.var] == lit.positive
        if clause.is_hard:
            feasible &= satisfied
        else:
            scores += np.where(satisfied, clause.weight, 0.0)
    for factor in m.factors:
        counts = states[:, list(factor.scope)].sum(axis=1)
        scores += np.asarray(factor.count_table)[counts]
    return np.where(feasible, scores, -np.inf)


@dataclass(frozen=True)
class BruteForceResult:
    log_z: float
    posterior: np.ndarray
    argmax: Assignment
    log_scores: np.ndarray


def brute_force(m: Model, cap: int = BRUTE_FORCE_CAP) -> BruteForceResult:
    scores = score_all_states(m, cap)
    top = scores.max()
    if top == -np.inf:
        raise AllZeroMass("every state violates a hard clause")
    log_z = float(logsumexp(scores))
    posterior = np.exp(scores - log_z)
    winners = np.flatnonzero(scores == top)
    best = min(
        (assignment_from_index(int(i), m.num_vars) for i in winners),
        key=assignment_to_bits,
    )
    return BruteForceResult(
        log_z=log_z,
        posterior=posterior,
        argmax=best,
        log_scores=scores,
    )


def action_indices(perm: Sequence[int], num_vars: int) -> np.ndarray:
    """Array p with p[i] = index of g.x_i under ``(g.x)[g(v)] = x[v]``."""
    action = variable_action(perm, num_vars)
    index = np.arange(2**num_vars, dtype=np.int64)
    images = np.zeros_like(index)
    for v, target in enumerate(action):
        images |= ((index >> v) & 1) << target
    return images


@dataclass(frozen=True)
class OrbitPartition:
    """``labels[i]`` is the smallest state in the orbit of state i."""

    labels: np.ndarray

    @cached_property
    def classes(self) -> list[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        _, starts = np.unique(self.labels[order], return_index=True)
        return [np.sort(chunk) for chunk in np.split(order, starts[1:])]

    @property
    def num_classes(self) -> int:
        return int(np.unique(self.labels).size)

    @cached_property
    def sizes(self) -> np.ndarray:
        """Orbit size of the orbit containing each state."""
        _, inverse, counts = np.unique(self.labels, return_inverse=True, return_counts=True)
        return counts[inverse]


def brute_orbit_partition(
    m: Model, gens: Iterable[Sequence[int]], cap: int = BRUTE_FORCE_CAP
) -> OrbitPartition:
    """Closure of states under the variable action of ``gens``."""
    _check_cap(m.num_vars, cap)
    maps = []
    for gen in gens:
        forward = action_indices(gen, m.num_vars)
        backward = np.empty_like(forward)
        backward[forward] = np.arange(forward.size)
        maps.extend((forward, backward))
    labels = np.arange(2**m.num_vars, dtype=np.int64)
    changed = True
    while changed:
        changed = False
        for mapping in maps:
            pulled = np.minimum(labels, labels[mapping])
            if not np.array_equal(pulled, labels):
                labels = pulled
                changed = True
        # pointer jumping shortens chains of labels
        labels = labels[labels]
    return OrbitPartition(labels=labels)


def uniform_orbit_distribution(partition: OrbitPartition) -> np.ndarray:
    return 1.0 / (partition.num_classes * partition.sizes.astype(float))


__all__ = [
    "BruteForceResult",
    "OrbitPartition",
    "action_indices",
    "brute_force",
    "brute_orbit_partition",
    "score_all_states",
    "state_matrix",
    "uniform_orbit_distribution",
]
