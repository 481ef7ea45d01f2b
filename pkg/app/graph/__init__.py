"""Colored graphs, refinement and canonization."""

from app.graph.canon import (
    AutResult,
    CanonizedAssignment,
    ModelSymmetry,
    canonical_assignment,
    canonical_form,
    canonize_assignment,
)
from app.graph.colored_graph import ColoredGraph, to_dot
from app.graph.refine import Partition, equitable_partition, refine
from app.graph.symgraph import VertexMap, encode_assignment, induce

__all__ = [
    "AutResult",
    "CanonizedAssignment",
    "ColoredGraph",
    "ModelSymmetry",
    "Partition",
    "VertexMap",
    "canonical_assignment",
    "canonical_form",
    "canonize_assignment",
    "encode_assignment",
    "equitable_partition",
    "induce",
    "refine",
    "to_dot",
]
