"""Total variation curves, the orbit-jump mixing bound and the combined
evaluation table."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from app.domain.constants import BURNSIDE_STEPS
from app.domain.enums import ProposalKind
from app.domain.exceptions import ConfigurationError, KernelInvariantError
from app.domain.models import Model
from app.domain.scoring import assignment_to_bits, assignment_to_index
from app.eval.kernels import (
    KernelContext,
    check_row_stochastic,
    kernel_gibbs,
    kernel_lifted,
    kernel_orbit_jump,
)
from app.infrastructure.logging import get_logger

TV_COLUMNS = ("t", "tv_orbit_jump", "tv_lifted", "tv_gibbs", "upper_bound")


def tv(mu: np.ndarray, nu: np.ndarray) -> float:
    mu = np.asarray(mu, dtype=float)
    nu = np.asarray(nu, dtype=float)
    if mu.shape != nu.shape:
        raise KernelInvariantError(f"distribution shapes differ: {mu.shape} vs {nu.shape}")
    return 0.5 * float(np.abs(mu - nu).sum())


def tv_curve(
    kernel: np.ndarray, start: int, target: np.ndarray, T: int
) -> list[tuple[int, float]]:
    """TV between the law of the chain started at ``start`` and ``target``
    after t = 0..T steps."""
    row = np.zeros(kernel.shape[0])
    row[start] = 1.0
    curve = [(0, tv(row, target))]
    for t in range(1, T + 1):
        row = row @ kernel
        curve.append((t, tv(row, target)))
    return curve


def mixing_upper_bound(num_orbits: int, t: int) -> float:
    if num_orbits < 1 or t < 0:
        raise ConfigurationError("mixing bound needs num_orbits >= 1 and t >= 0")
    if num_orbits == 1:
        return 0.0
    return ((num_orbits - 1) / num_orbits) ** t


def steps_for_epsilon(num_orbits: int, epsilon: float) -> int:
    if num_orbits < 1 or not 0.0 < epsilon < 1.0:
        raise ConfigurationError("steps_for_epsilon needs num_orbits >= 1 and 0 < epsilon < 1")
    return math.ceil(math.log(1.0 / epsilon) * num_orbits)


@dataclass
class TVTable:
    rows: list[tuple[int, float, float, float, float]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> list[float]:
        index = TV_COLUMNS.index(name)
        return [row[index] for row in self.rows]


def tv_table(
    m: Model,
    T: int,
    k: int = BURNSIDE_STEPS,
    start: Sequence[bool] | None = None,
    *,
    gibbs_updates: int = 1,
    epsilon: float = 0.01,
    ctx: KernelContext | None = None,
) -> TVTable:
    """Distance to the posterior for orbit-jump (k Burnside steps as
    proposal), lifted MCMC and Gibbs, next to the bound for the model's
    orbit count."""
    logger = get_logger()
    ctx = ctx or KernelContext.build(m)
    start = tuple(start) if start is not None else (False,) * m.num_vars
    start_index = assignment_to_index(start)
    target = ctx.posterior()
    with logger.stage("tv_table", num_vars=m.num_vars, T=T, k=k):
        kernels = {
            "tv_orbit_jump": kernel_orbit_jump(m, ProposalKind.BURNSIDE, k, ctx=ctx),
            "tv_lifted": kernel_lifted(m, gibbs_updates, ctx=ctx),
            "tv_gibbs": kernel_gibbs(m, ctx=ctx),
        }
        for kernel in kernels.values():
            check_row_stochastic(kernel)
        curves = {
            name: tv_curve(kernel, start_index, target, T) for name, kernel in kernels.items()
        }
    num_orbits = ctx.partition.num_classes
    table = TVTable(
        metadata={
            "num_vars": m.num_vars,
            "num_orbits": num_orbits,
            "burnside_steps": k,
            "gibbs_updates_per_orbital_move": gibbs_updates,
            "start": assignment_to_bits(start),
            "epsilon": epsilon,
            "steps_for_epsilon": steps_for_epsilon(num_orbits, epsilon),
            "kernels": {
                "tv_orbit_jump": f"Metropolized proposal of {k} exact Burnside steps",
                "tv_lifted": (
                    f"{gibbs_updates} random-scan Gibbs update(s) then a uniform automorphism"
                ),
                "tv_gibbs": "one random-scan single-site Gibbs update",
                "upper_bound": "((N-1)/N)^t with N the orbit count",
            },
        }
    )
    for t in range(T + 1):
        table.rows.append(
            (
                t,
                curves["tv_orbit_jump"][t][1],
                curves["tv_lifted"][t][1],
                curves["tv_gibbs"][t][1],
                mixing_upper_bound(num_orbits, t),
            )
        )
    return table


def write_tv_csv(table: TVTable, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(TV_COLUMNS)
        for row in table.rows:
            writer.writerow([row[0], *(repr(float(v)) for v in row[1:])])
    return path


__all__ = [
    "TVTable",
    "TV_COLUMNS",
    "mixing_upper_bound",
    "steps_for_epsilon",
    "tv",
    "tv_curve",
    "tv_table",
    "write_tv_csv",
]
