"""
Pydantic models for the fundamental crystal G_F.

GraphSpec is the user-facing JSON description of a graph family member;
FiniteGraph is the validated, immutable graph with its potential Q.
"""

import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, model_validator

GraphKind = Literal["path", "cycle", "star", "complete", "custom"]


class GraphSpec(BaseModel):
    """
    Description of a finite graph to build.

    JSON shape:
        {"kind": "path|cycle|star|complete|custom", "size": N,
         "edges": [[i, j], ...], "potential": [q0, ...]}

    ``size`` is the vertex count for path/cycle/complete/custom and the
    number of leaves (edges) for star, which therefore has size + 1 vertices.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: GraphKind
    size: PositiveInt
    edges: list[tuple[int, int]] | None = None
    potential: list[float] | None = None

    @property
    def vertex_count(self) -> int:
        """Number of vertices the spec describes."""
        return self.size + 1 if self.kind == "star" else self.size


class FiniteGraph(BaseModel):
    """
    Finite graph G_F with a real potential Q.

    Attributes:
        k: Vertex count |V_F|
        adjacency: k x k symmetric 0/1 matrix with zero diagonal
        potential: Q(v_p) for every vertex, dimensionless energy units
        name: Optional label used in reports and logs

    The graph does not need to be connected.
    """

    model_config = ConfigDict(frozen=True)

    k: PositiveInt
    adjacency: tuple[tuple[int, ...], ...]
    potential: tuple[float, ...]
    name: str | None = Field(default=None)

    @model_validator(mode="after")
    def check_structure(self) -> "FiniteGraph":
        """Enforce symmetry, zero diagonal, 0/1 entries and a finite potential."""
        if len(self.adjacency) != self.k or any(
            len(row) != self.k for row in self.adjacency
        ):
            raise ValueError(f"adjacency must be {self.k}x{self.k}")
        for p, row in enumerate(self.adjacency):
            if row[p] != 0:
                raise ValueError(f"self-loop at vertex {p}")
            for q, entry in enumerate(row):
                if entry not in (0, 1):
                    raise ValueError(f"adjacency[{p}][{q}] must be 0 or 1")
                if entry != self.adjacency[q][p]:
                    raise ValueError(f"adjacency not symmetric at ({p}, {q})")
        if len(self.potential) != self.k:
            raise ValueError(
                f"potential has {len(self.potential)} entries, expected {self.k}"
            )
        if not all(math.isfinite(v) for v in self.potential):
            raise ValueError("potential entries must be finite")
        return self

    @property
    def adjacency_matrix(self) -> np.ndarray:
        """Dense adjacency as a float array."""
        return np.array(self.adjacency, dtype=float).reshape(self.k, self.k)

    @property
    def potential_vector(self) -> np.ndarray:
        """Potential Q as a float array."""
        return np.array(self.potential, dtype=float)

    def degrees(self) -> list[int]:
        """Degree of every vertex."""
        return [sum(row) for row in self.adjacency]

    @property
    def max_degree(self) -> int:
        """Largest vertex degree (0 for an edgeless graph)."""
        return max(self.degrees())

    @property
    def edge_count(self) -> int:
        """Number of undirected edges."""
        return sum(self.degrees()) // 2

    def to_json(self) -> str:
        """Serialize to JSON."""
        return self.model_dump_json()

    @classmethod
    def from_json(cls, data: str) -> "FiniteGraph":
        """Deserialize from JSON produced by ``to_json``."""
        return cls.model_validate_json(data)
