"""Exact transition matrices of every sampler, built densely over all
2^N states (rows are current states, columns next states)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit, softmax

from app.domain.constants import ELEMENT_CAP, KERNEL_STATE_CAP, STOCHASTIC_TOL
from app.domain.enums import ProposalKind
from app.domain.exceptions import KernelInvariantError, StateSpaceTooLarge
from app.domain.models import Model
from app.eval.oracle import (
    OrbitPartition,
    action_indices,
    brute_orbit_partition,
    score_all_states,
    uniform_orbit_distribution,
)
from app.graph.canon import ModelSymmetry
from app.group.chain import enumerate_elements
from app.infrastructure.logging import get_logger


@dataclass
class KernelContext:
    """Shared ingredients: scores, the orbit partition and the distinct
    variable actions of every automorphism."""

    model: Model
    symmetry: ModelSymmetry
    log_scores: np.ndarray
    partition: OrbitPartition
    actions: np.ndarray

    @property
    def num_states(self) -> int:
        return self.log_scores.size

    @classmethod
    def build(
        cls,
        m: Model,
        *,
        symmetry: ModelSymmetry | None = None,
        state_cap: int = KERNEL_STATE_CAP,
        element_cap: int = ELEMENT_CAP,
    ) -> "KernelContext":
        if m.num_vars > state_cap:
            raise StateSpaceTooLarge(m.num_vars, state_cap)
        logger = get_logger()
        with logger.stage("kernel_context", num_vars=m.num_vars) as result:
            symmetry = symmetry or ModelSymmetry(m)
            elements = enumerate_elements(symmetry.group, element_cap)
            # several vertex automorphisms may act identically on variables
            actions = np.unique(
                np.stack([action_indices(g, m.num_vars) for g in elements]), axis=0
            )
            partition = brute_orbit_partition(m, symmetry.root.generators, cap=state_cap)
            result.update(
                elements=len(elements), actions=len(actions), orbits=partition.num_classes
            )
        return cls(
            model=m,
            symmetry=symmetry,
            log_scores=score_all_states(m, cap=state_cap),
            partition=partition,
            actions=actions,
        )

    def posterior(self) -> np.ndarray:
        return softmax(self.log_scores)


def _context(m: Model, ctx: KernelContext | None) -> KernelContext:
    return ctx if ctx is not None else KernelContext.build(m)


def kernel_burnside(m: Model, k: int = 1, *, ctx: KernelContext | None = None) -> np.ndarray:
    """B(x, y) = sum over g in Stab(x) of [g.y = y] / (|Stab(x)| |Fix(g)|), to the k-th power."""
    ctx = _context(m, ctx)
    states = np.arange(ctx.num_states)
    fixes = (ctx.actions == states[None, :]).astype(float)  # (elements, states)
    stab = fixes.T / fixes.sum(axis=0)[:, None]
    fix = fixes / fixes.sum(axis=1)[:, None]
    return np.linalg.matrix_power(stab @ fix, k)


def _metropolize(proposal: np.ndarray, log_weight: np.ndarray) -> np.ndarray:
    """Accept x -> y with min(1, w(y)/w(x)); zero-weight targets are never
    entered and zero-weight sources always leave."""
    finite = np.isfinite(log_weight)
    with np.errstate(invalid="ignore"):
        delta = log_weight[None, :] - log_weight[:, None]
    accept = np.exp(np.minimum(0.0, np.nan_to_num(delta, nan=-np.inf)))
    accept[~finite[:, None] & finite[None, :]] = 1.0
    accept[:, ~finite] = 0.0
    kernel = proposal * accept
    np.fill_diagonal(kernel, 0.0)
    np.fill_diagonal(kernel, 1.0 - kernel.sum(axis=1))
    return kernel


def kernel_orbit_jump(
    m: Model,
    proposal: ProposalKind = ProposalKind.EXACT,
    k: int = 7,
    *,
    ctx: KernelContext | None = None,
) -> np.ndarray:
    ctx = _context(m, ctx)
    if proposal == ProposalKind.EXACT:
        q = uniform_orbit_distribution(ctx.partition)
        proposal_matrix = np.tile(q, (ctx.num_states, 1))
    else:
        proposal_matrix = kernel_burnside(m, k, ctx=ctx)
    log_weight = ctx.log_scores + np.log(ctx.partition.sizes.astype(float))
    return _metropolize(proposal_matrix, log_weight)


def kernel_gibbs(m: Model, *, ctx: KernelContext | None = None) -> np.ndarray:
    """Random-scan single-site Gibbs; rows of zero-probability states are
    self-loops."""
    ctx = _context(m, ctx)
    n = m.num_vars
    size = ctx.num_states
    states = np.arange(size)
    scores = ctx.log_scores
    kernel = np.zeros((size, size))
    for v in range(n):
        on = states | (1 << v)
        off = states & ~(1 << v)
        with np.errstate(invalid="ignore"):
            p_on = expit(scores[on] - scores[off])
        p_on = np.nan_to_num(p_on, nan=0.0)
        np.add.at(kernel, (states, on), p_on / n)
        np.add.at(kernel, (states, off), (1.0 - p_on) / n)
    dead = ~np.isfinite(scores)
    kernel[dead] = 0.0
    kernel[dead, states[dead]] = 1.0
    return kernel


def kernel_orbital(m: Model, *, ctx: KernelContext | None = None) -> np.ndarray:
    """Apply a uniformly random automorphism."""
    ctx = _context(m, ctx)
    size = ctx.num_states
    kernel = np.zeros((size, size))
    states = np.arange(size)
    for images in ctx.actions:
        kernel[states, images] += 1.0
    return kernel / len(ctx.actions)


def kernel_lifted(
    m: Model, gibbs_updates: int = 1, *, ctx: KernelContext | None = None
) -> np.ndarray:
    ctx = _context(m, ctx)
    gibbs = np.linalg.matrix_power(kernel_gibbs(m, ctx=ctx), gibbs_updates)
    return gibbs @ kernel_orbital(m, ctx=ctx)


def stationary_distribution(
    kernel: np.ndarray,
    start: np.ndarray | None = None,
    tol: float = 1e-14,
    max_iter: int = 10_000,
) -> np.ndarray:
    """Power iteration from ``start`` (uniform by default)."""
    size = kernel.shape[0]
    pi = np.full(size, 1.0 / size) if start is None else np.asarray(start, dtype=float)
    for _ in range(max_iter):
        nxt = pi @ kernel
        if np.abs(nxt - pi).sum() < tol:
            return nxt
        pi = nxt
    get_logger().warning("stationary_distribution", "power iteration did not converge")
    return pi


def check_row_stochastic(kernel: np.ndarray, tol: float = STOCHASTIC_TOL) -> None:
    if (kernel < -tol).any():
        raise KernelInvariantError("kernel has negative entries")
    worst = float(np.abs(kernel.sum(axis=1) - 1.0).max())
    if worst > tol:
        raise KernelInvariantError(f"kernel rows deviate from 1 by {worst:.3e}")


def stationarity_residual(kernel: np.ndarray, pi: np.ndarray) -> float:
    return float(np.abs(pi @ kernel - pi).sum())


def detailed_balance_residual(kernel: np.ndarray, pi: np.ndarray) -> float:
    flow = pi[:, None] * kernel
    return float(np.abs(flow - flow.T).max())


__all__ = [
    "KernelContext",
    "check_row_stochastic",
    "detailed_balance_residual",
    "kernel_burnside",
    "kernel_gibbs",
    "kernel_lifted",
    "kernel_orbit_jump",
    "kernel_orbital",
    "stationarity_residual",
    "stationary_distribution",
]
