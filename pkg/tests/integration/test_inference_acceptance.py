"""End-to-end acceptance checks against the brute-force oracle."""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from app.domain.enums import Comparator, ProposalKind
from app.domain.generators import gen_pairwise, gen_pigeonhole
from app.domain.models import EvidencePredicate
from app.domain.scoring import assignment_from_index, assignment_to_index
from app.eval.kernels import (
    KernelContext,
    kernel_burnside,
    kernel_orbit_jump,
    stationarity_residual,
)
from app.eval.mixing import mixing_upper_bound, tv_curve, tv_table
from app.eval.oracle import brute_force, brute_orbit_partition, uniform_orbit_distribution
from app.graph.canon import ModelSymmetry
from app.inference.exact import generate_orbits, orbit_size, partition_function, prob_evidence

FAMILIES = (
    [pytest.param(gen_pigeonhole(n, 2), id=f"pigeonhole-{n}") for n in range(2, 6)]
    + [pytest.param(gen_pigeonhole(n, 2, hard=False), id=f"quantum-{n}") for n in range(2, 6)]
    + [
        pytest.param(gen_pairwise(n, (0.4, -0.1, 0.4), (0.0, 0.3)), id=f"pairwise-{n}")
        for n in range(2, 11)
    ]
)


def _pigeonhole_orbit_count(n: int) -> int:
    """Orbits of S_n x S_2 on assignments of n pigeons to subsets of two holes."""
    fixed_by_swap = sum(n - 2 * b + 1 for b in range(n // 2 + 1))
    return (math.comb(n + 3, 3) + fixed_by_swap) // 2


@pytest.mark.parametrize("m", FAMILIES)
def test_census_matches_oracle(m):
    symmetry = ModelSymmetry(m)
    census = generate_orbits(m, symmetry=symmetry)
    partition = brute_orbit_partition(m, symmetry.root.generators)
    assert census.num_orbits == partition.num_classes
    assert census.total_size == 2**m.num_vars
    assert census.stats.certificate_calls <= m.num_vars * census.num_orbits
    seen = set()
    for record in census.records:
        index = assignment_to_index(record.representative)
        assert int(partition.sizes[index]) == record.orbit_size
        seen.add(int(partition.labels[index]))
    assert len(seen) == census.num_orbits
    assert partition_function(census) == pytest.approx(brute_force(m).log_z, rel=1e-9)


@pytest.mark.parametrize("n", [2, 5, 9])
def test_uniform_pairwise_census(n):
    census = generate_orbits(gen_pairwise(n, (0.0, 0.0, 0.0), (0.0, 0.0)))
    assert census.num_orbits == 2 * n
    assert partition_function(census) == pytest.approx(n * math.log(2), rel=1e-12)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_pigeonhole_orbit_counts(n):
    assert generate_orbits(gen_pigeonhole(n, 2)).num_orbits == _pigeonhole_orbit_count(n)


@pytest.mark.parametrize(
    "m",
    [
        pytest.param(gen_pigeonhole(4, 2), id="pigeonhole-4"),
        pytest.param(gen_pigeonhole(3, 2, hard=False), id="quantum-3"),
        pytest.param(gen_pairwise(7, (0.4, -0.1, 0.4), (0.0, 0.3)), id="pairwise-7"),
    ],
)
def test_orbit_stabilizer_on_random_states(m):
    symmetry = ModelSymmetry(m)
    partition = brute_orbit_partition(m, symmetry.root.generators)
    rng = np.random.default_rng(17)
    for index in rng.integers(2**m.num_vars, size=200):
        x = assignment_from_index(int(index), m.num_vars)
        assert orbit_size(m, symmetry.group, x, symmetry=symmetry) == int(partition.sizes[index])


def test_cardinality_evidence_against_oracle():
    m = gen_pigeonhole(4, 2, hard=False).with_evidence(
        EvidencePredicate.cardinality(list(range(8)), Comparator.LE, 3)
    )
    oracle = brute_force(m)
    counts = np.array([sum(assignment_from_index(i, 8)) for i in range(256)])
    expected = float(oracle.posterior[counts <= 3].sum())
    assert prob_evidence(m) == pytest.approx(expected, rel=1e-9)


def test_threaded_census_is_deterministic():
    m = gen_pigeonhole(4, 2, hard=False)
    assert generate_orbits(m).records == generate_orbits(m, threads=4).records


@pytest.mark.parametrize("hard", [True, False])
def test_exact_orbit_jump_respects_the_bound(hard):
    m = gen_pigeonhole(4, 2, hard=hard)
    ctx = KernelContext.build(m)
    kernel = kernel_orbit_jump(m, ProposalKind.EXACT, ctx=ctx)
    for t, distance in tv_curve(kernel, 0, ctx.posterior(), 100):
        assert distance <= mixing_upper_bound(ctx.partition.num_classes, t) + 1e-12


@pytest.mark.parametrize("hard", [True, False])
def test_burnside_stationary_law_is_uniform_over_orbits(hard):
    m = gen_pigeonhole(4, 2, hard=hard)
    ctx = KernelContext.build(m)
    q = uniform_orbit_distribution(ctx.partition)
    assert stationarity_residual(kernel_burnside(m, ctx=ctx), q) < 1e-8


@pytest.mark.parametrize(
    "m",
    [
        pytest.param(gen_pigeonhole(5, 2), id="pigeonhole-5"),
        pytest.param(gen_pigeonhole(4, 2, hard=False), id="quantum-4"),
    ],
)
def test_orbit_jump_converges_within_two_hundred_steps(m):
    ctx = KernelContext.build(m)
    kernel = kernel_orbit_jump(m, ProposalKind.BURNSIDE, k=7, ctx=ctx)
    distances = [distance for _, distance in tv_curve(kernel, 0, ctx.posterior(), 200)]
    assert min(distances) < 0.05
    assert distances[-1] < 0.05


def test_lifted_curve_decreases_on_quantum_pigeonhole():
    table = tv_table(gen_pigeonhole(4, 2, hard=False), 40, k=3)
    lifted = table.column("tv_lifted")
    assert all(b <= a + 1e-12 for a, b in zip(lifted, lifted[1:]))
    assert lifted[-1] < lifted[0]


@pytest.mark.slow
@pytest.mark.timeout(900)
@pytest.mark.parametrize("n", [10, 15, 20])
def test_orbit_generation_meets_the_time_budget(n):
    m = gen_pigeonhole(n, 2)
    started = time.perf_counter()
    census = generate_orbits(m)
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    assert census.num_orbits == _pigeonhole_orbit_count(n)
    assert census.aut_order == 2 * math.factorial(n)
    assert census.stats.certificate_calls <= m.num_vars * census.num_orbits
