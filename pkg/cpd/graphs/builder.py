"""
Construction of the standard graph families and the finite Hamiltonian.

Families come from networkx: path P_k, cycle C_k, star with k edges
(center vertex 0 plus k leaves) and complete K_k; custom graphs are built
from an explicit edge list.
"""

import networkx as nx
import numpy as np

from cpd.config import get_logger
from cpd.exceptions import GraphSpecError

from .models import FiniteGraph, GraphSpec

logger = get_logger(__name__)


def _check_spec(spec: GraphSpec) -> None:
    """Validate the family-specific invariants of a spec."""
    if spec.kind == "cycle" and spec.size < 3:
        raise GraphSpecError(
            f"cycle needs at least 3 vertices, got {spec.size}", field="size"
        )

    if spec.kind == "custom":
        seen: set[tuple[int, int]] = set()
        for i, j in spec.edges or []:
            if i == j:
                raise GraphSpecError(f"self-loop at vertex {i}", field="edges")
            if not (0 <= i < spec.size and 0 <= j < spec.size):
                raise GraphSpecError(
                    f"edge ({i}, {j}) has an endpoint outside 0..{spec.size - 1}",
                    field="edges",
                )
            key = (min(i, j), max(i, j))
            if key in seen:
                raise GraphSpecError(f"duplicate edge ({i}, {j})", field="edges")
            seen.add(key)
    elif spec.edges is not None:
        raise GraphSpecError(
            f"edges are only accepted for custom graphs, not {spec.kind}",
            field="edges",
        )

    if spec.potential is not None and len(spec.potential) != spec.vertex_count:
        raise GraphSpecError(
            f"potential has {len(spec.potential)} entries, "
            f"expected {spec.vertex_count}",
            field="potential",
        )


def _family_graph(spec: GraphSpec) -> nx.Graph:
    """Build the networkx graph for a spec."""
    if spec.kind == "path":
        return nx.path_graph(spec.size)
    if spec.kind == "cycle":
        return nx.cycle_graph(spec.size)
    if spec.kind == "star":
        return nx.star_graph(spec.size)
    if spec.kind == "complete":
        return nx.complete_graph(spec.size)

    graph = nx.Graph()
    graph.add_nodes_from(range(spec.size))
    graph.add_edges_from(spec.edges or [])
    return graph


def build_finite_graph(spec: GraphSpec, name: str | None = None) -> FiniteGraph:
    """
    Build a FiniteGraph from a spec.

    Args:
        spec: Graph description
        name: Optional label carried into reports

    Returns:
        Validated FiniteGraph with the potential attached (all zero by default)

    Raises:
        GraphSpecError: On cycles shorter than 3, self-loops, duplicate or
            out-of-range edges, or a potential of the wrong length
    """
    _check_spec(spec)

    graph = _family_graph(spec)
    k = graph.number_of_nodes()
    adjacency = nx.to_numpy_array(graph, nodelist=range(k), dtype=int)
    potential = spec.potential if spec.potential is not None else [0.0] * k

    finite = FiniteGraph(
        k=k,
        adjacency=tuple(tuple(int(v) for v in row) for row in adjacency),
        potential=tuple(float(v) for v in potential),
        name=name or f"{spec.kind}{spec.size}",
    )
    logger.debug(
        "Built finite graph",
        kind=spec.kind,
        k=k,
        edges=finite.edge_count,
    )
    return finite


def hamiltonian_matrix(g: FiniteGraph) -> np.ndarray:
    """
    Return H_{G_F} = A_{G_F} + Q as a dense real symmetric matrix.

    Args:
        g: The finite graph

    Returns:
        k x k float array, exactly equal to its transpose
    """
    return g.adjacency_matrix + np.diag(g.potential_vector)
