"""Ground truth: brute-force oracle, exact kernels and mixing evaluation."""

from app.eval.kernels import (
    KernelContext,
    check_row_stochastic,
    detailed_balance_residual,
    kernel_burnside,
    kernel_gibbs,
    kernel_lifted,
    kernel_orbit_jump,
    stationarity_residual,
    stationary_distribution,
)
from app.eval.mixing import mixing_upper_bound, steps_for_epsilon, tv, tv_curve, tv_table
from app.eval.oracle import (
    BruteForceResult,
    OrbitPartition,
    brute_force,
    brute_orbit_partition,
    uniform_orbit_distribution,
)

__all__ = [
    "BruteForceResult",
    "KernelContext",
    "OrbitPartition",
    "brute_force",
    "brute_orbit_partition",
    "check_row_stochastic",
    "detailed_balance_residual",
    "kernel_burnside",
    "kernel_gibbs",
    "kernel_lifted",
    "kernel_orbit_jump",
    "mixing_upper_bound",
    "stationarity_residual",
    "stationary_distribution",
    "steps_for_epsilon",
    "tv",
    "tv_curve",
    "tv_table",
    "uniform_orbit_distribution",
]
