"""
Finite fundamental crystals G_F with potentials.

Example usage:
    from cpd.graphs import GraphSpec, build_finite_graph, hamiltonian_matrix

    ladder = build_finite_graph(GraphSpec(kind="path", size=2))
    h = hamiltonian_matrix(ladder)
"""

from .builder import build_finite_graph, hamiltonian_matrix
from .io import graph_from_json, graph_to_json, load_graph_spec, parse_graph_spec
from .models import FiniteGraph, GraphKind, GraphSpec
from .presets import PRESETS, get_preset

__all__ = [
    # Models
    "FiniteGraph",
    "GraphSpec",
    "GraphKind",
    # Construction
    "build_finite_graph",
    "hamiltonian_matrix",
    # I/O
    "load_graph_spec",
    "parse_graph_spec",
    "graph_to_json",
    "graph_from_json",
    # Presets
    "PRESETS",
    "get_preset",
]
