"""Induced and assignment-encoded colored graph tests."""

import pytest

from app.domain.enums import VertexKind
from app.domain.exceptions import KernelInvariantError, ModelStructureError
from app.domain.models import Model, WeightedClause
from app.graph.canon import ModelSymmetry
from app.graph.colored_graph import ColoredGraph, to_dot
from app.graph.symgraph import (
    FALSE_COLOR,
    apply_to_assignment,
    encode_assignment,
    induce,
    variable_action,
)


def test_pigeonhole_induced_graph(pigeonhole_3_2):
    g, vmap = induce(pigeonhole_3_2)
    assert g.n_vertices == 15
    assert g.num_edges == 18
    assert g.num_colors == 3
    assert g.kinds.count(VertexKind.VARIABLE) == 6
    assert g.kinds.count(VertexKind.FACTOR) == 9
    assert vmap.var_vertex == tuple(range(6))
    assert len(vmap.factor_vertex) == 9


def test_unit_clause_graph(unit_clause_model):
    g, _ = induce(unit_clause_model)
    assert (g.n_vertices, g.num_edges, g.num_colors) == (2, 1, 2)


def test_mixed_sign_clause_uses_ports():
    m = Model(num_vars=2, clauses=(WeightedClause.of(1.0, 1, -2),))
    g, vmap = induce(m)
    assert g.n_vertices == 5
    assert g.kinds.count(VertexKind.PORT) == 2
    ports = vmap.port_vertices[0]
    assert len(ports) == 2
    assert g.colors[ports[0]] != g.colors[ports[1]]
    # no variable-variable edges, ports sit between factor and variable
    factor = vmap.factor_vertex[0]
    assert not g.has_edge(factor, 0)
    assert all(g.has_edge(factor, p) for p in ports)


def test_variable_colors_are_lowest_and_dense(pairwise_5):
    g, _ = induce(pairwise_5)
    assert sorted(set(g.colors)) == list(range(g.num_colors))
    assert all(g.colors[v] == 0 for v in range(5))
    assert all(c > 0 for c in g.colors[5:])


def test_identical_clauses_share_a_color():
    m = Model(
        num_vars=3,
        clauses=(
            WeightedClause.of(1.0, 1, 2),
            WeightedClause.of(1.0, 2, 3),
            WeightedClause.of(2.0, 1, 3),
        ),
    )
    g, vmap = induce(m)
    a, b, c = (g.colors[v] for v in vmap.factor_vertex)
    assert a == b != c


def test_encode_assignment_splits_variable_color(pigeonhole_3_2):
    g, _ = induce(pigeonhole_3_2)
    top = max(g.colors) + 1
    x = (False, False, False, True, True, True)
    h = encode_assignment(pigeonhole_3_2, g, x)
    assert h.neighbors == g.neighbors
    assert [h.colors[v] for v in range(6)] == [FALSE_COLOR] * 3 + [top] * 3
    assert h.colors[6:] == g.colors[6:]


@pytest.mark.parametrize("x", [(False,) * 6, (True,) * 6, (True,) + (False,) * 5])
def test_encoded_colors_are_dense(pigeonhole_3_2, x):
    g, _ = induce(pigeonhole_3_2)
    h = encode_assignment(pigeonhole_3_2, g, x)
    assert sorted(set(h.colors)) == list(range(h.num_colors))


def test_all_true_encoding_puts_variables_on_the_top_color(pigeonhole_3_2):
    g, _ = induce(pigeonhole_3_2)
    h = encode_assignment(pigeonhole_3_2, g, (True,) * 6)
    assert {h.colors[v] for v in range(6)} == {max(h.colors)}
    assert h.num_colors == g.num_colors


def test_factorless_model_separates_all_false_from_all_true():
    m = Model(num_vars=3)
    symmetry = ModelSymmetry(m)
    assert symmetry.aut_order == 6
    low = symmetry.stabilizer((False,) * 3)
    high = symmetry.stabilizer((True,) * 3)
    assert low.certificate != high.certificate
    assert symmetry.stabilizer((True, False, False)).group_order == 2


def test_encode_assignment_length_mismatch(pigeonhole_3_2):
    g, _ = induce(pigeonhole_3_2)
    with pytest.raises(ModelStructureError):
        encode_assignment(pigeonhole_3_2, g, (True,))


def test_apply_to_assignment_moves_values():
    perm = (1, 2, 0, 3)
    assert apply_to_assignment(perm, (True, False, False)) == (False, True, False)
    assert variable_action(perm, 3) == (1, 2, 0)
    with pytest.raises(KernelInvariantError):
        apply_to_assignment((3, 1, 2, 0), (True, False, False))


def test_colored_graph_validation_and_dot():
    with pytest.raises(ModelStructureError):
        ColoredGraph.from_edges(2, [(0, 0)], [0, 0])
    g = ColoredGraph.from_edges(3, [(0, 1), (1, 2)], [0, 1, 0])
    assert g.is_automorphism((2, 1, 0))
    assert not g.is_automorphism((1, 0, 2))
    dot = to_dot(g)
    assert dot.startswith("graph G {")
    assert "0 -- 1;" in dot


@pytest.mark.parametrize("color", [-1, 2**32])
def test_colors_outside_the_certificate_range_are_rejected(color):
    with pytest.raises(ModelStructureError):
        ColoredGraph.from_edges(2, [(0, 1)], [0, color])
    g = ColoredGraph.from_edges(2, [(0, 1)], [0, 0])
    with pytest.raises(ModelStructureError):
        g.recolored([color, 0])


def test_edge_array_lists_each_edge_once():
    g = ColoredGraph.from_edges(4, [(2, 0), (0, 2), (3, 1)], [0, 0, 0, 0])
    assert g.edge_array.tolist() == [[0, 2], [1, 3]]
    assert g.color_array.tolist() == [0, 0, 0, 0]
