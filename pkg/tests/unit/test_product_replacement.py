"""Product replacement sampler tests."""

from collections import Counter

import numpy as np
import pytest

from app.domain.exceptions import ConfigurationError
from app.graph.canon import ModelSymmetry
from app.group.chain import schreier_sims
from app.group.perm import from_cycles, identity
from app.group.product_replacement import Sampler, prng_sampler

# 99.9% chi-square quantiles
CHI2_CRITICAL = {11: 31.264, 23: 49.728}


def _chi_square(counts: Counter, num_elements: int, draws: int) -> float:
    expected = draws / num_elements
    return sum((counts.get(key, 0) - expected) ** 2 / expected for key in counts) + (
        num_elements - len(counts)
    ) * expected


def _check_uniform(sampler: Sampler, group, seed: int, draws: int = 12_000) -> None:
    rng = np.random.default_rng(seed)
    counts = Counter(sampler.next(rng) for _ in range(draws))
    total = group.order()
    assert len(counts) == total
    assert all(group.is_member(g) for g in counts)
    expected = draws / total
    for count in counts.values():
        assert abs(count - expected) <= 0.25 * expected
    assert _chi_square(counts, total, draws) < CHI2_CRITICAL[total - 1]


def test_uniform_on_symmetric_group_s4():
    gens = [from_cycles(4, [(0, 1)]), from_cycles(4, [(0, 1, 2, 3)])]
    _check_uniform(prng_sampler(gens), schreier_sims(gens), seed=11)


def test_uniform_on_pigeonhole_automorphisms(pigeonhole_3_2):
    symmetry = ModelSymmetry(pigeonhole_3_2)
    assert symmetry.aut_order == 12
    sampler = prng_sampler(symmetry.root.generators, degree=symmetry.graph.n_vertices)
    _check_uniform(sampler, symmetry.group, seed=5)


def test_same_seed_same_stream():
    gens = [from_cycles(5, [(0, 1)]), from_cycles(5, [(0, 1, 2, 3, 4)])]
    a, b = prng_sampler(gens), prng_sampler(gens)
    rng_a, rng_b = np.random.default_rng(3), np.random.default_rng(3)
    assert [a.next(rng_a) for _ in range(20)] == [b.next(rng_b) for _ in range(20)]


def test_trivial_group_returns_identity():
    sampler = Sampler([identity(3)], degree=3)
    assert sampler.trivial
    assert sampler.next(np.random.default_rng(0)) == identity(3)


def test_invalid_configuration():
    with pytest.raises(ConfigurationError):
        Sampler([(1, 0)], slots=1)
    with pytest.raises(ConfigurationError):
        Sampler([])
    with pytest.raises(ConfigurationError):
        Sampler([(1, 0)], steps_per_draw=0)


def test_slots_grow_to_hold_every_generator():
    gens = [from_cycles(8, [(i, i + 1)]) for i in range(7)]
    sampler = Sampler(gens, slots=3)
    assert len(sampler._slots) == 7
