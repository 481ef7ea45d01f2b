"""Vertex-colored simple undirected graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from app.domain.enums import VertexKind
from app.domain.exceptions import ModelStructureError

# certificates pack one color per vertex into four bytes
MAX_COLOR = 2**32 - 1


def _color_array(colors: Sequence[int]) -> np.ndarray:
    array = np.asarray(colors, dtype=np.int64)
    if array.size and (array.min() < 0 or array.max() > MAX_COLOR):
        raise ModelStructureError(f"vertex colors must lie in [0, {MAX_COLOR}]")
    return array


@dataclass(frozen=True)
class ColoredGraph:
    """Neighbor lists are sorted; ``rows[v]`` is the adjacency bitset of v.
    ``edge_array`` holds each edge once as a ``(u, w)`` row with ``u < w``."""

    n_vertices: int
    neighbors: tuple[tuple[int, ...], ...]
    colors: tuple[int, ...]
    kinds: tuple[VertexKind, ...]
    rows: tuple[int, ...] = field(repr=False, compare=False, default=())
    edge_array: np.ndarray = field(repr=False, compare=False, default=None)
    color_array: np.ndarray = field(repr=False, compare=False, default=None)

    @classmethod
    def from_edges(
        cls,
        n_vertices: int,
        edges: Iterable[tuple[int, int]],
        colors: Sequence[int],
        kinds: Sequence[VertexKind] | None = None,
    ) -> "ColoredGraph":
        if len(colors) != n_vertices:
            raise ModelStructureError(f"expected {n_vertices} colors, got {len(colors)}")
        adj: list[set[int]] = [set() for _ in range(n_vertices)]
        for u, v in edges:
            if u == v:
                raise ModelStructureError(f"self-loop at vertex {u}")
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ModelStructureError(f"edge ({u}, {v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        neighbors = tuple(tuple(sorted(nb)) for nb in adj)
        rows = tuple(sum(1 << w for w in nb) for nb in neighbors)
        pairs = [(u, w) for u, nb in enumerate(neighbors) for w in nb if u < w]
        if kinds is None:
            kinds = (VertexKind.VARIABLE,) * n_vertices
        return cls(
            n_vertices=n_vertices,
            neighbors=neighbors,
            colors=tuple(int(c) for c in colors),
            kinds=tuple(kinds),
            rows=rows,
            edge_array=np.array(pairs, dtype=np.int64).reshape(-1, 2),
            color_array=_color_array(colors),
        )

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u, nb in enumerate(self.neighbors) for w in nb if u < w]

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.neighbors) // 2

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    def recolored(self, colors: Sequence[int]) -> "ColoredGraph":
        return ColoredGraph(
            n_vertices=self.n_vertices,
            neighbors=self.neighbors,
            colors=tuple(int(c) for c in colors),
            kinds=self.kinds,
            rows=self.rows,
            edge_array=self.edge_array,
            color_array=_color_array(colors),
        )

    def relabeled(self, perm: Sequence[int]) -> "ColoredGraph":
        """Graph with vertex v renamed to ``perm[v]``."""
        colors = [0] * self.n_vertices
        kinds = [VertexKind.VARIABLE] * self.n_vertices
        for v in range(self.n_vertices):
            colors[perm[v]] = self.colors[v]
            kinds[perm[v]] = self.kinds[v]
        edges = [(perm[u], perm[w]) for u, w in self.edges()]
        return ColoredGraph.from_edges(self.n_vertices, edges, colors, kinds)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        if len(perm) != self.n_vertices:
            return False
        for v in range(self.n_vertices):
            if self.colors[perm[v]] != self.colors[v]:
                return False
            image = {perm[w] for w in self.neighbors[v]}
            if image != set(self.neighbors[perm[v]]):
                return False
        return True


_PALETTE = (
    "white", "gray", "lightblue", "salmon", "palegreen", "khaki", "plum",
    "orange", "cyan", "pink", "gold", "tan",
)


def to_dot(g: ColoredGraph, name: str = "G") -> str:
    """DOT dump for debugging; vertex color becomes the fill attribute."""
    shapes = {VertexKind.VARIABLE: "circle", VertexKind.FACTOR: "box", VertexKind.PORT: "point"}
    lines = [f"graph {name} {{", "  node [style=filled];"]
    for v in range(g.n_vertices):
        fill = _PALETTE[g.colors[v] % len(_PALETTE)]
        lines.append(
            f'  {v} [label="{v}:{g.colors[v]}", shape={shapes[g.kinds[v]]}, fillcolor="{fill}"];'
        )
    for u, w in g.edges():
        lines.append(f"  {u} -- {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["ColoredGraph", "to_dot"]
