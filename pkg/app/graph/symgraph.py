"""Colored graphs induced by models and by assignments.

Vertex order is fixed: variables first (by id), then one vertex per clause
and per symmetric factor in declaration order, then port vertices of
mixed-sign clauses. Variable vertices carry color 0 in the model graph; an
encoded assignment keeps its false variables there and moves its true
variables to the top color.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Sequence

from app.domain.enums import VertexKind
from app.domain.exceptions import KernelInvariantError, ModelStructureError
from app.domain.models import Assignment, Model, SymFactor, WeightedClause
from app.graph.colored_graph import ColoredGraph

VARIABLE_COLOR = 0
FALSE_COLOR = 0


@dataclass(frozen=True)
class VertexMap:
    var_vertex: tuple[int, ...]
    factor_vertex: tuple[int, ...]
    port_vertices: tuple[tuple[int, ...], ...]

    @property
    def num_vars(self) -> int:
        return len(self.var_vertex)


def _float_bits(value: float) -> bytes:
    return struct.pack(">d", float(value))


def _clause_key(clause: WeightedClause) -> tuple:
    weight = "hard" if clause.is_hard else _float_bits(clause.weight)
    signs = tuple(sorted(lit.positive for lit in clause.literals))
    return ("clause", weight, signs, clause.arity)


def _factor_key(factor: SymFactor) -> tuple:
    return ("factor", factor.arity, tuple(_float_bits(v) for v in factor.count_table))


def induce(m: Model) -> tuple[ColoredGraph, VertexMap]:
    n = m.num_vars
    palette: dict[tuple, int] = {}
    colors: list[int] = [VARIABLE_COLOR] * n
    kinds: list[VertexKind] = [VertexKind.VARIABLE] * n
    edges: list[tuple[int, int]] = []
    factor_vertex: list[int] = []
    pending_ports: list[tuple[int, int, bool]] = []  # (factor vertex, var, sign)

    def color_for(key: tuple) -> int:
        if key not in palette:
            palette[key] = len(palette) + 1
        return palette[key]

    for clause in m.clauses:
        vertex = len(colors)
        factor_vertex.append(vertex)
        colors.append(color_for(_clause_key(clause)))
        kinds.append(VertexKind.FACTOR)
        signs = {lit.positive for lit in clause.literals}
        if len(signs) == 1:
            edges.extend((vertex, lit.var) for lit in clause.literals)
        else:
            pending_ports.extend((vertex, lit.var, lit.positive) for lit in clause.literals)

    for factor in m.factors:
        vertex = len(colors)
        factor_vertex.append(vertex)
        colors.append(color_for(_factor_key(factor)))
        kinds.append(VertexKind.FACTOR)
        edges.extend((vertex, v) for v in factor.scope)

    port_groups: dict[int, list[int]] = {}
    if pending_ports:
        positive_color = len(palette) + 1
        negative_color = positive_color + 1
        for owner, var, positive in pending_ports:
            port = len(colors)
            colors.append(positive_color if positive else negative_color)
            kinds.append(VertexKind.PORT)
            edges.append((owner, port))
            edges.append((port, var))
            port_groups.setdefault(owner, []).append(port)

    # keep colors dense: positive ports may be absent while negative ones exist
    used = sorted(set(colors))
    dense = {c: i for i, c in enumerate(used)}
    colors = [dense[c] for c in colors]

    graph = ColoredGraph.from_edges(len(colors), edges, colors, kinds)
    vmap = VertexMap(
        var_vertex=tuple(range(n)),
        factor_vertex=tuple(factor_vertex),
        port_vertices=tuple(tuple(port_groups.get(v, ())) for v in factor_vertex),
    )
    return graph, vmap


def encode_assignment(m: Model, g: ColoredGraph, x: Sequence[bool]) -> ColoredGraph:
    """Split the variable color: false variables keep color 0, true variables
    take the color just above every model color. Colors are then densified,
    which only moves anything for the all-true assignment."""
    if len(x) != m.num_vars:
        raise ModelStructureError(
            f"assignment has {len(x)} values, model has {m.num_vars} variables"
        )
    if g.n_vertices < m.num_vars:
        raise ModelStructureError("graph was not induced from this model")
    n = m.num_vars
    true_color = max(g.colors) + 1 if g.colors else 1
    colors = [true_color if x[v] else FALSE_COLOR for v in range(n)]
    colors.extend(g.colors[n:])
    dense = {c: i for i, c in enumerate(sorted(set(colors)))}
    return g.recolored([dense[c] for c in colors])


def apply_to_assignment(perm: Sequence[int], x: Sequence[bool]) -> Assignment:
    """Variable action of a vertex permutation: ``(g.x)[g(v)] = x[v]``."""
    n = len(x)
    out = [False] * n
    for v in range(n):
        image = perm[v]
        if image >= n:
            raise KernelInvariantError(f"permutation maps variable {v} to non-variable {image}")
        out[image] = bool(x[v])
    return tuple(out)


def variable_action(perm: Sequence[int], num_vars: int) -> tuple[int, ...]:
    action = tuple(perm[v] for v in range(num_vars))
    if any(image >= num_vars for image in action):
        raise KernelInvariantError("permutation does not preserve the variable vertices")
    return action


__all__ = [
    "FALSE_COLOR",
    "VertexMap",
    "apply_to_assignment",
    "encode_assignment",
    "induce",
    "variable_action",
]
