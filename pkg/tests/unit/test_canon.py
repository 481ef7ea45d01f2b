"""Canonical labeling, automorphism group and assignment canonization tests."""

import math
from itertools import combinations, permutations, product

import numpy as np
import pytest

from app.domain.generators import gen_pairwise, gen_pigeonhole
from app.domain.scoring import assignment_from_index, assignment_to_index, log_score
from app.eval.oracle import brute_orbit_partition
from app.graph.canon import (
    ModelSymmetry,
    brute_force_automorphisms,
    brute_force_isomorphic,
    canonical_assignment,
    canonical_form,
    canonize_assignment,
    certificate_of,
)
from app.graph.colored_graph import ColoredGraph
from app.graph.refine import equitable_partition
from app.graph.symgraph import apply_to_assignment, induce
from app.group.chain import enumerate_elements, schreier_sims


def _brute_certificate(g: ColoredGraph) -> bytes:
    return min(certificate_of(g, lab) for lab in permutations(range(g.n_vertices)))


def _cycle(n: int) -> ColoredGraph:
    return ColoredGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], [0] * n)


def _random_relabel(g: ColoredGraph, rng: np.random.Generator) -> ColoredGraph:
    return g.relabeled(tuple(int(v) for v in rng.permutation(g.n_vertices)))


def test_cycle_and_complete_graph_orders():
    assert canonical_form(_cycle(5)).group_order == 10
    k4 = ColoredGraph.from_edges(4, list(combinations(range(4), 2)), [0] * 4)
    assert canonical_form(k4).group_order == 24


def test_colors_restrict_automorphisms():
    g = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)], [0, 1, 0, 1])
    result = canonical_form(g)
    assert result.group_order == len(brute_force_automorphisms(g)) == 4
    assert all(g.is_automorphism(gen) for gen in result.generators)


def test_search_order_matches_schreier_sims():
    g, _ = induce(gen_pigeonhole(3, 2))
    result = canonical_form(g)
    assert result.group_order == 12
    assert schreier_sims(result.generators, degree=g.n_vertices).order() == 12


def test_pruning_does_not_change_the_certificate():
    g, _ = induce(gen_pigeonhole(3, 2, hard=False))
    assert canonical_form(g, prune=True).certificate == canonical_form(g, prune=False).certificate


def test_certificates_agree_with_brute_force_isomorphism_on_small_graphs():
    # every graph on 4 vertices with up to 3 colors
    pairs = list(combinations(range(4), 2))
    by_fast: dict[bytes, bytes] = {}
    by_slow: dict[bytes, bytes] = {}
    for mask in range(1 << len(pairs)):
        edges = [pair for i, pair in enumerate(pairs) if mask >> i & 1]
        for colors in product(range(3), repeat=4):
            g = ColoredGraph.from_edges(4, edges, colors)
            fast = canonical_form(g).certificate
            slow = _brute_certificate(g)
            assert by_fast.setdefault(fast, slow) == slow
            assert by_slow.setdefault(slow, fast) == fast


def test_relabeled_benchmark_graphs_share_certificates():
    rng = np.random.default_rng(2024)
    for m in (gen_pigeonhole(3, 2), gen_pigeonhole(2, 3, hard=False)):
        g, _ = induce(m)
        reference = canonical_form(g).certificate
        for _ in range(25):
            assert canonical_form(_random_relabel(g, rng)).certificate == reference


def test_non_isomorphic_graphs_differ():
    path = ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)], [0] * 4)
    star = ColoredGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)], [0] * 4)
    assert not brute_force_isomorphic(path, star)
    assert canonical_form(path).certificate != canonical_form(star).certificate


def test_equitable_partition_of_regular_graph_is_one_cell():
    assert len(equitable_partition(_cycle(6)).cells()) == 1


def test_representative_is_constant_on_orbits(pigeonhole_3_2):
    symmetry = ModelSymmetry(pigeonhole_3_2)
    rng = np.random.default_rng(9)
    elements = enumerate_elements(symmetry.group, cap=1000)
    for _ in range(30):
        x = tuple(bool(b) for b in rng.integers(2, size=6))
        rep = canonical_assignment(pigeonhole_3_2, x, symmetry)
        for g in elements:
            assert canonical_assignment(pigeonhole_3_2, apply_to_assignment(g, x), symmetry) == rep


def test_witness_maps_input_onto_representative(pigeonhole_3_2):
    symmetry = ModelSymmetry(pigeonhole_3_2)
    x = (True, False, False, True, False, False)
    result = canonize_assignment(pigeonhole_3_2, x, symmetry)
    assert symmetry.graph.is_automorphism(result.witness)
    assert apply_to_assignment(result.witness, x) == result.representative
    assert sum(result.representative) == 2


@pytest.mark.parametrize("bits", ["000000", "111111", "100000", "101010"])
def test_orbit_stabilizer_on_selected_states(pigeonhole_3_2, bits):
    symmetry = ModelSymmetry(pigeonhole_3_2)
    x = tuple(ch == "1" for ch in bits)
    stab = canonical_form(symmetry.encode(x))
    orbit = {apply_to_assignment(g, x) for g in enumerate_elements(symmetry.group, cap=1000)}
    assert stab.group_order * len(orbit) == symmetry.aut_order


def test_seeded_search_matches_unseeded_search():
    g, _ = induce(gen_pigeonhole(4, 2, hard=False))
    plain = canonical_form(g)
    seeded = canonical_form(g, seeds=plain.generators[:2])
    assert seeded.certificate == plain.certificate
    assert seeded.canonical_labeling == plain.canonical_labeling
    assert seeded.group_order == plain.group_order == 48


def test_known_order_stops_at_the_first_leaf():
    plain = canonical_form(_cycle(5))
    shortcut = canonical_form(_cycle(5), known_order=10)
    assert plain.stats.leaves > 1
    assert shortcut.stats.leaves == 1
    assert shortcut.certificate == plain.certificate
    assert shortcut.canonical_labeling == plain.canonical_labeling
    g, _ = induce(gen_pigeonhole(4, 2))
    assert canonical_form(g, known_order=48).certificate == canonical_form(g).certificate


def test_wrong_known_order_falls_back_to_the_full_search():
    g, _ = induce(gen_pigeonhole(3, 2))
    plain = canonical_form(g)
    fallback = canonical_form(g, known_order=plain.group_order + 1)
    assert fallback.certificate == plain.certificate
    assert fallback.group_order == plain.group_order


def test_certificate_keeps_colors_above_two_bytes_apart():
    low = ColoredGraph.from_edges(2, [(0, 1)], [0, 4464])
    high = ColoredGraph.from_edges(2, [(0, 1)], [0, 4464 + 65536])
    assert canonical_form(low).certificate != canonical_form(high).certificate
    assert len(certificate_of(high, (0, 1))) == 4 + 4 * 2 + 1


def test_certificate_bits_follow_the_labeling():
    path = ColoredGraph.from_edges(3, [(0, 1), (1, 2)], [0, 0, 0])
    # middle vertex first: pairs (0,1) and (0,2) are edges, (1,2) is not
    assert certificate_of(path, (1, 0, 2))[-1] == 0b11000000
    assert certificate_of(path, (0, 1, 2))[-1] == 0b10100000


def test_fixed_assignments_skip_the_representative_search(pigeonhole_3_2):
    symmetry = ModelSymmetry(pigeonhole_3_2)
    for x in [(False,) * 6, (True,) * 6]:
        result = symmetry.canonize(x)
        assert result.representative == x
        assert result.witness == tuple(range(symmetry.graph.n_vertices))
    assert symmetry.representative_calls == 0
    symmetry.canonize((True,) + (False,) * 5)
    assert symmetry.representative_calls == 1
    assert symmetry.stabilizer_calls == 3


def _burnside_count(n: int, colors: int) -> int:
    """Isomorphism classes of graphs on n vertices with vertex colors from
    ``range(colors)``, by averaging fixed points over the symmetric group."""
    pairs = list(combinations(range(n), 2))
    total = 0
    for sigma in permutations(range(n)):
        seen: set[tuple[int, int]] = set()
        pair_cycles = 0
        for start in pairs:
            if start in seen:
                continue
            pair_cycles += 1
            a, b = start
            while (a, b) not in seen:
                seen.add((a, b))
                a, b = sorted((sigma[a], sigma[b]))
        visited: set[int] = set()
        vertex_cycles = 0
        for v in range(n):
            if v in visited:
                continue
            vertex_cycles += 1
            while v not in visited:
                visited.add(v)
                v = sigma[v]
        total += 2**pair_cycles * colors**vertex_cycles
    return total // math.factorial(n)


def _extend(classes: dict[bytes, ColoredGraph], colors: int) -> dict[bytes, ColoredGraph]:
    """One graph per certificate among all one-vertex extensions."""
    out: dict[bytes, ColoredGraph] = {}
    for g in classes.values():
        k = g.n_vertices
        base_edges = g.edges()
        for c in range(colors):
            for mask in range(1 << k):
                edges = base_edges + [(v, k) for v in range(k) if mask >> v & 1]
                h = ColoredGraph.from_edges(k + 1, edges, g.colors + (c,))
                out.setdefault(canonical_form(h).certificate, h)
    return out


def test_burnside_count_of_small_graphs():
    assert _burnside_count(4, 1) == 11
    assert _burnside_count(7, 1) == 1044
    assert _burnside_count(2, 3) == 12


@pytest.mark.slow
@pytest.mark.timeout(1800)
@pytest.mark.parametrize(("max_vertices", "colors"), [(6, 3), (7, 1)])
def test_certificates_separate_every_isomorphism_class(max_vertices, colors):
    classes = {}
    for c in range(colors):
        g = ColoredGraph.from_edges(1, [], [c])
        classes[canonical_form(g).certificate] = g
    for n in range(2, max_vertices + 1):
        classes = _extend(classes, colors)
        assert len(classes) == _burnside_count(n, colors)


@pytest.mark.slow
@pytest.mark.timeout(1800)
def test_ten_thousand_relabel_pairs_agree_with_the_orbit_oracle():
    rng = np.random.default_rng(77)
    cases = []
    models = (
        gen_pigeonhole(3, 2, hard=False),
        gen_pigeonhole(4, 2),
        gen_pairwise(6, (0.3, 0.1, 0.3), (0.0, 0.2)),
    )
    for m in models:
        symmetry = ModelSymmetry(m)
        partition = brute_orbit_partition(m, symmetry.root.generators)
        elements = enumerate_elements(symmetry.group, cap=10**4)
        cases.append((m, symmetry, partition, elements))
    for trial in range(10**4):
        m, symmetry, partition, elements = cases[trial % len(cases)]
        n = m.num_vars
        x = tuple(bool(b) for b in rng.integers(2, size=n))
        if trial % 2:
            y = apply_to_assignment(elements[int(rng.integers(len(elements)))], x)
        else:
            y = tuple(bool(b) for b in rng.integers(2, size=n))
        same_orbit = (
            partition.labels[assignment_to_index(x)] == partition.labels[assignment_to_index(y)]
        )
        same_cert = symmetry.stabilizer(x).certificate == symmetry.stabilizer(y).certificate
        assert same_cert == same_orbit
        encoded = symmetry.encode(x)
        relabeled = _random_relabel(encoded, rng)
        assert canonical_form(relabeled).certificate == canonical_form(encoded).certificate


@pytest.mark.slow
@pytest.mark.timeout(600)
@pytest.mark.parametrize(
    "m",
    [
        gen_pigeonhole(3, 2, hard=False),
        gen_pigeonhole(4, 2),
        gen_pairwise(5, (0.5, -0.2, 0.5), (0.0, 0.7)),
    ],
)
def test_log_score_is_invariant_under_the_group(m):
    symmetry = ModelSymmetry(m)
    elements = enumerate_elements(symmetry.group, cap=10**4)
    for index in range(2**m.num_vars):
        x = assignment_from_index(index, m.num_vars)
        expected = log_score(m, x)
        for g in elements:
            assert log_score(m, apply_to_assignment(g, x)) == pytest.approx(expected, rel=1e-12)
