"""Equitable partition refinement (1-dimensional Weisfeiler-Leman).

A partition is kept in the ordered-cells form used by individualization
refinement search: ``lab`` lists vertices cell by cell, ``cell_of[v]`` is the
start position of v's cell and ``end[s]`` is the exclusive end of the cell
starting at ``s``. Splits replace a cell in place by its fragments sorted by
neighbor count, so the cell order never depends on vertex names.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from app.graph.colored_graph import ColoredGraph


@dataclass
class Partition:
    lab: list[int]
    cell_of: list[int]
    end: list[int]
    num_cells: int

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]]) -> "Partition":
        n = sum(len(c) for c in cells)
        lab: list[int] = []
        cell_of = [0] * n
        end = [0] * n
        for cell in cells:
            start = len(lab)
            lab.extend(cell)
            for v in cell:
                cell_of[v] = start
            end[start] = len(lab)
        return cls(lab=lab, cell_of=cell_of, end=end, num_cells=len(cells))

    @classmethod
    def from_colors(cls, colors: Sequence[int]) -> "Partition":
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            classes.setdefault(c, []).append(v)
        return cls.from_cells([classes[c] for c in sorted(classes)])

    def copy(self) -> "Partition":
        return Partition(self.lab[:], self.cell_of[:], self.end[:], self.num_cells)

    def cell_starts(self) -> list[int]:
        starts = []
        pos = 0
        while pos < len(self.lab):
            starts.append(pos)
            pos = self.end[pos]
        return starts

    def cells(self) -> list[list[int]]:
        return [self.lab[s : self.end[s]] for s in self.cell_starts()]

    def is_discrete(self) -> bool:
        return self.num_cells == len(self.lab)

    def target_cell(self) -> int:
        """Start of the first smallest non-singleton cell, or -1 if discrete."""
        best, best_size = -1, 0
        for s in self.cell_starts():
            size = self.end[s] - s
            if size > 1 and (best < 0 or size < best_size):
                best, best_size = s, size
        return best

    def individualize(self, v: int) -> tuple["Partition", int]:
        """Copy with v split off as a singleton at the front of its cell."""
        p = self.copy()
        start = p.cell_of[v]
        stop = p.end[start]
        rest = [w for w in p.lab[start:stop] if w != v]
        p.lab[start] = v
        p.lab[start + 1 : stop] = rest
        p.end[start] = start + 1
        p.end[start + 1] = stop
        for w in rest:
            p.cell_of[w] = start + 1
        p.num_cells += 1
        return p, start


def refine(
    g: ColoredGraph,
    p: Partition,
    splitters: Iterable[int] | None = None,
    *,
    in_place: bool = False,
) -> Partition:
    """Coarsest equitable refinement of ``p``.

    ``splitters`` are cell starts to seed the work queue with; by default
    every cell is a splitter. After individualizing a vertex of an
    equitable partition, seeding with the new singleton is sufficient.
    ``in_place`` refines ``p`` itself instead of a copy.
    """
    if not in_place:
        p = p.copy()
    n = len(p.lab)
    lab, cell_of, end = p.lab, p.cell_of, p.end
    adj = g.neighbors
    queue: deque[int] = deque(p.cell_starts() if splitters is None else splitters)
    queued = [False] * n
    for s in queue:
        queued[s] = True
    count = [0] * n

    while queue and p.num_cells < n:
        s = queue.popleft()
        queued[s] = False
        touched: list[int] = []
        for w in lab[s : end[s]]:
            for u in adj[w]:
                if count[u] == 0:
                    touched.append(u)
                count[u] += 1
        if not touched:
            continue
        by_cell: dict[int, list[int]] = {}
        for u in touched:
            by_cell.setdefault(cell_of[u], []).append(u)
        for c in sorted(by_cell):
            stop = end[c]
            if stop - c == 1:
                continue
            hit = by_cell[c]
            groups: dict[int, list[int]] = {}
            for v in hit:
                groups.setdefault(count[v], []).append(v)
            if len(hit) < stop - c:
                groups[0] = [v for v in lab[c:stop] if count[v] == 0]
            if len(groups) == 1:
                continue
            pos = c
            starts: list[int] = []
            largest, largest_size = c, -1
            for key in sorted(groups):
                fragment = groups[key]
                lab[pos : pos + len(fragment)] = fragment
                for v in fragment:
                    cell_of[v] = pos
                end[pos] = pos + len(fragment)
                starts.append(pos)
                if len(fragment) > largest_size:
                    largest, largest_size = pos, len(fragment)
                pos += len(fragment)
            p.num_cells += len(starts) - 1
            if queued[c]:
                fresh = starts[1:]
            else:
                fresh = [start for start in starts if start != largest]
            for start in fresh:
                if not queued[start]:
                    queued[start] = True
                    queue.append(start)
        for u in touched:
            count[u] = 0
    return p


def equitable_partition(g: ColoredGraph) -> Partition:
    return refine(g, Partition.from_colors(g.colors))


__all__ = ["Partition", "equitable_partition", "refine"]
