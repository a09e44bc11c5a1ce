"""Counting and extremal analysis of 4-edge paths at fixed vertex/edge counts."""

from .graphs import Graph, build_graph, canonical_key, codegree, complement

__all__ = [
    "Graph",
    "build_graph",
    "canonical_key",
    "codegree",
    "complement",
]

__version__ = "0.1.0"
