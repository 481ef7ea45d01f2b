"""MCMC over assignments: the Burnside process, orbit-jump MCMC and the
lifted-MCMC and Gibbs baselines.

Orbit-jump MCMC is a Metropolized independence sampler. Its proposal is k
steps of the Burnside process, whose stationary law picks an orbit
uniformly and then a member uniformly; the acceptance ratio multiplies the
score ratio by the ratio of orbit sizes to cancel that proposal.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from app.domain.constants import (
    BURNSIDE_PR_BURN_IN,
    BURNSIDE_STEPS,
    PR_BURN_IN,
    PR_SLOTS,
    PR_STEPS_PER_DRAW,
    STABILIZER_CACHE_SIZE,
)
from app.domain.enums import ChainKind
from app.domain.exceptions import ConfigurationError, InitViolatesHard, KernelInvariantError
from app.domain.models import Assignment, EvidencePredicate, Model
from app.domain.scoring import (
    NEG_INF,
    all_false,
    assignment_to_bits,
    gibbs_conditional,
    log_score,
    predicate_holds,
)
from app.graph.canon import AutResult, ModelSymmetry
from app.graph.symgraph import apply_to_assignment
from app.group.chain import PermGroup
from app.group.perm import Perm, cycles
from app.group.product_replacement import Sampler, prng_sampler
from app.infrastructure.cache import MemoryCache, OrbitSizeCache
from app.infrastructure.logging import get_logger
from app.inference.exact import divide_order, stabilizer_order


class ChainConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: ChainKind = ChainKind.ORBIT_JUMP
    burnside_steps: int = BURNSIDE_STEPS
    gibbs_updates_per_orbital_move: int = 1
    seed: int
    iterations: int = 1000
    burn_in: int = 0
    thinning: int = 1
    pr_slots: int = PR_SLOTS
    burnside_pr_burn_in: int = BURNSIDE_PR_BURN_IN
    orbital_pr_burn_in: int = PR_BURN_IN
    pr_steps_per_draw: int = PR_STEPS_PER_DRAW
    stabilizer_cache_size: int = STABILIZER_CACHE_SIZE
    init: Optional[tuple[bool, ...]] = None
    debug_checks: bool = False

    @field_validator("seed")
    @classmethod
    def _seed_range(cls, value: int) -> int:
        if not 0 <= value < 2**64:
            raise ConfigurationError(f"seed must fit in 64 unsigned bits, got {value}")
        return value

    @model_validator(mode="after")
    def _check_counts(self) -> "ChainConfig":
        if self.burnside_steps < 1:
            raise ConfigurationError("burnside_steps must be >= 1")
        if self.gibbs_updates_per_orbital_move < 1:
            raise ConfigurationError("gibbs_updates_per_orbital_move must be >= 1")
        if self.iterations < 1:
            raise ConfigurationError("iterations must be >= 1")
        if self.burn_in < 0 or self.thinning < 1:
            raise ConfigurationError("burn_in must be >= 0 and thinning >= 1")
        if self.pr_slots < 2 or self.burnside_pr_burn_in < 0 or self.orbital_pr_burn_in < 0:
            raise ConfigurationError("product replacement needs >= 2 slots and burn-in >= 0")
        if self.pr_steps_per_draw < 1 or self.stabilizer_cache_size < 1:
            raise ConfigurationError("pr_steps_per_draw and stabilizer_cache_size must be >= 1")
        return self


@dataclass(frozen=True)
class ChainState:
    """``stabilizer`` and ``orbit_size`` describe ``current`` when set."""

    current: Assignment
    log_score: float
    orbit_size: Optional[int] = None
    stabilizer: Optional[AutResult] = None
    accepted: bool = True


@dataclass
class ChainResult:
    samples: list[tuple[int, Assignment, float, bool]] = field(default_factory=list)
    running_estimates: list[float] = field(default_factory=list)
    estimate: float = math.nan
    acceptance_rate: float = 1.0
    final_state: Optional[ChainState] = None


@dataclass
class _Engine:
    """Per-chain resources shared by the step functions."""

    symmetry: ModelSymmetry
    cache: OrbitSizeCache = field(default_factory=OrbitSizeCache)
    pr_slots: int = PR_SLOTS
    burnside_pr_burn_in: int = BURNSIDE_PR_BURN_IN
    pr_steps_per_draw: int = PR_STEPS_PER_DRAW
    stabilizer_cache_size: int = STABILIZER_CACHE_SIZE
    stabilizers: MemoryCache[AutResult] = field(init=False)

    def __post_init__(self) -> None:
        self.stabilizers = MemoryCache(max_size=self.stabilizer_cache_size)

    def stabilizer(self, x: Assignment) -> AutResult:
        aut = self.stabilizers.get(x)
        if aut is None:
            aut = self.symmetry.stabilizer(x)
            self.stabilizers.set(x, aut)
        return aut

    def orbit_size(self, aut: AutResult) -> int:
        degree = self.symmetry.graph.n_vertices
        return self.cache.get_or_compute(
            aut.certificate,
            lambda: divide_order(self.symmetry.aut_order, stabilizer_order(aut, degree)),
        )


def sample_fixer(s: Perm, var_vertices: Sequence[int], rng: np.random.Generator) -> Assignment:
    """Uniform assignment fixed by ``s``: one fair coin per variable cycle."""
    position = {v: i for i, v in enumerate(var_vertices)}
    for v in var_vertices:
        if s[v] not in position:
            raise KernelInvariantError(f"permutation maps variable vertex {v} to {s[v]}")
    restricted = [position[s[v]] for v in var_vertices]
    var_cycles = cycles(restricted, include_fixed=True)
    coins = rng.integers(2, size=len(var_cycles))
    out = [False] * len(var_vertices)
    for cycle, coin in zip(var_cycles, coins):
        for i in cycle:
            out[i] = bool(coin)
    return tuple(out)


def burnside_step(
    m: Model,
    x: Sequence[bool],
    rng: np.random.Generator,
    *,
    symmetry: ModelSymmetry | None = None,
    stabilizer: AutResult | None = None,
    slots: int = PR_SLOTS,
    burn_in: int = BURNSIDE_PR_BURN_IN,
    steps_per_draw: int = PR_STEPS_PER_DRAW,
    debug_checks: bool = False,
) -> Assignment:
    """One Burnside move: s ~ Stab(x) by product replacement, then a
    uniform fixed point of s."""
    symmetry = symmetry or ModelSymmetry(m)
    if stabilizer is None:
        stabilizer = symmetry.stabilizer(x)
    group_sampler = prng_sampler(
        stabilizer.generators,
        slots=slots,
        burn_in=burn_in,
        steps_per_draw=steps_per_draw,
        degree=symmetry.graph.n_vertices,
    )
    s = group_sampler.next(rng)
    y = sample_fixer(s, range(m.num_vars), rng)
    if debug_checks and apply_to_assignment(s, y) != y:
        raise KernelInvariantError("fixer sample is not fixed by the stabilizer element")
    return y


def _initial_state(m: Model, x: Assignment, engine: _Engine | None) -> ChainState:
    score = log_score(m, x)
    if engine is None:
        return ChainState(current=x, log_score=score)
    aut = engine.stabilizer(x)
    return ChainState(current=x, log_score=score, orbit_size=engine.orbit_size(aut), stabilizer=aut)


def orbit_jump_step(
    m: Model,
    autG: PermGroup,
    st: ChainState,
    k: int,
    rng: np.random.Generator,
    *,
    engine: _Engine | None = None,
    debug_checks: bool = False,
) -> ChainState:
    engine = engine or _Engine(ModelSymmetry(m))
    if st.orbit_size is None:
        st = _initial_state(m, st.current, engine)
    y: Assignment = st.current
    aut: AutResult | None = st.stabilizer
    for _ in range(k):
        if aut is None:
            aut = engine.stabilizer(y)
        y = burnside_step(
            m,
            y,
            rng,
            symmetry=engine.symmetry,
            stabilizer=aut,
            slots=engine.pr_slots,
            burn_in=engine.burnside_pr_burn_in,
            steps_per_draw=engine.pr_steps_per_draw,
            debug_checks=debug_checks,
        )
        aut = None
    proposal_score = log_score(m, y)
    # the uniform draw is consumed on every step so streams stay aligned
    u = rng.random()
    if proposal_score == NEG_INF:
        return replace(st, accepted=False)
    aut_y = engine.stabilizer(y)
    size_y = engine.orbit_size(aut_y)
    if autG.order() != engine.symmetry.aut_order:
        raise KernelInvariantError("group chain does not belong to this model")
    if st.log_score == NEG_INF:
        accept = True
    else:
        log_ratio = (proposal_score + math.log(size_y)) - (st.log_score + math.log(st.orbit_size))
        accept = u == 0.0 or math.log(u) < log_ratio
    if not accept:
        return replace(st, accepted=False)
    return ChainState(
        current=y, log_score=proposal_score, orbit_size=size_y, stabilizer=aut_y, accepted=True
    )


def _gibbs_update(m: Model, x: Assignment, rng: np.random.Generator) -> Assignment:
    v = int(rng.integers(m.num_vars))
    p_true = gibbs_conditional(m, x, v)
    u = rng.random()
    if math.isnan(p_true):
        raise InitViolatesHard(f"Gibbs conditional undefined at variable {v}")
    values = list(x)
    values[v] = bool(u < p_true)
    return tuple(values)


def gibbs_step(m: Model, st: ChainState, rng: np.random.Generator) -> ChainState:
    """Random-scan single-site Gibbs update."""
    x = _gibbs_update(m, st.current, rng)
    return ChainState(current=x, log_score=log_score(m, x))


def lifted_mcmc_step(
    m: Model,
    autG: PermGroup,
    sampler: Sampler,
    st: ChainState,
    rng: np.random.Generator,
    *,
    gibbs_updates: int = 1,
) -> ChainState:
    """Gibbs updates followed by one orbital move x <- g.x with g drawn from
    the automorphism group; orbital moves are always accepted."""
    x = st.current
    for _ in range(gibbs_updates):
        x = _gibbs_update(m, x, rng)
    g = sampler.next(rng)
    if len(g) != autG.degree:
        raise KernelInvariantError("orbital sampler acts on a different graph")
    x = apply_to_assignment(g, x)
    return ChainState(current=x, log_score=log_score(m, x))


def run_chain(
    m: Model,
    cfg: ChainConfig,
    estimand: EvidencePredicate,
    *,
    symmetry: ModelSymmetry | None = None,
) -> ChainResult:
    """Run the configured kernel and estimate P(estimand) from the kept
    samples (after burn-in, every ``thinning``-th iteration)."""
    logger = get_logger()
    rng = np.random.default_rng(cfg.seed)
    x0 = cfg.init if cfg.init is not None else all_false(m.num_vars)
    if len(x0) != m.num_vars:
        raise ConfigurationError(f"init has {len(x0)} values, model has {m.num_vars} variables")
    if cfg.kind != ChainKind.ORBIT_JUMP and log_score(m, x0) == NEG_INF:
        raise InitViolatesHard("Gibbs-based chains need a positive-probability initial state")

    engine: _Engine | None = None
    orbital: Sampler | None = None
    autG: PermGroup | None = None
    if cfg.kind != ChainKind.GIBBS:
        symmetry = symmetry or ModelSymmetry(m)
        engine = _Engine(
            symmetry,
            pr_slots=cfg.pr_slots,
            burnside_pr_burn_in=cfg.burnside_pr_burn_in,
            pr_steps_per_draw=cfg.pr_steps_per_draw,
            stabilizer_cache_size=cfg.stabilizer_cache_size,
        )
        autG = symmetry.group
    if cfg.kind == ChainKind.LIFTED:
        orbital = prng_sampler(
            symmetry.root.generators,
            slots=cfg.pr_slots,
            burn_in=cfg.orbital_pr_burn_in,
            steps_per_draw=cfg.pr_steps_per_draw,
            degree=symmetry.graph.n_vertices,
        )

    state = _initial_state(m, tuple(x0), engine if cfg.kind == ChainKind.ORBIT_JUMP else None)
    result = ChainResult()
    hits = 0
    accepted = 0
    logger.stage_start("run_chain", kind=cfg.kind.value, iterations=cfg.iterations, seed=cfg.seed)
    for iteration in range(1, cfg.iterations + 1):
        if cfg.kind == ChainKind.ORBIT_JUMP:
            state = orbit_jump_step(
                m, autG, state, cfg.burnside_steps, rng,
                engine=engine, debug_checks=cfg.debug_checks,
            )
        elif cfg.kind == ChainKind.LIFTED:
            state = lifted_mcmc_step(
                m, autG, orbital, state, rng, gibbs_updates=cfg.gibbs_updates_per_orbital_move
            )
        else:
            state = gibbs_step(m, state, rng)
        accepted += int(state.accepted)
        if iteration <= cfg.burn_in or (iteration - cfg.burn_in) % cfg.thinning:
            continue
        result.samples.append((iteration, state.current, state.log_score, state.accepted))
        hits += int(predicate_holds(estimand, state.current))
        result.running_estimates.append(hits / len(result.samples))

    result.estimate = result.running_estimates[-1] if result.running_estimates else math.nan
    result.acceptance_rate = accepted / cfg.iterations
    result.final_state = state
    extra = {"cache": engine.cache.stats} if engine is not None else {}
    logger.stage_end(
        "run_chain",
        samples=len(result.samples),
        acceptance_rate=round(result.acceptance_rate, 4),
        **extra,
    )
    return result


def write_samples_csv(result: ChainResult, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["iteration", "bits", "log_score", "accepted"])
        for iteration, x, score, accepted in result.samples:
            writer.writerow([iteration, assignment_to_bits(x), repr(score), int(accepted)])
    return path


def sample_stream(result: ChainResult) -> Iterable[str]:
    return (assignment_to_bits(x) for _, x, _, _ in result.samples)


__all__ = [
    "ChainConfig",
    "ChainResult",
    "ChainState",
    "burnside_step",
    "gibbs_step",
    "lifted_mcmc_step",
    "orbit_jump_step",
    "run_chain",
    "sample_fixer",
    "sample_stream",
    "write_samples_csv",
]
