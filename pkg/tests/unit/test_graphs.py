"""
Unit tests for graph specs, construction and loading.
"""

import json
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

from cpd.exceptions import GraphSpecError
from cpd.graphs import (
    PRESETS,
    FiniteGraph,
    GraphSpec,
    build_finite_graph,
    get_preset,
    graph_from_json,
    graph_to_json,
    hamiltonian_matrix,
    load_graph_spec,
    parse_graph_spec,
)


# =============================================================================
# Tests for Family Construction
# =============================================================================


class TestBuildFiniteGraph:
    """Tests for build_finite_graph."""

    def test_path_two_is_single_edge(self) -> None:
        """P_2 has one edge and degrees (1, 1)."""
        g = build_finite_graph(GraphSpec(kind="path", size=2))
        assert g.k == 2
        assert g.edge_count == 1
        assert g.degrees() == [1, 1]

    def test_cycle_three_is_triangle(self) -> None:
        """C_3 is 2-regular with 3 edges."""
        g = build_finite_graph(GraphSpec(kind="cycle", size=3))
        assert g.edge_count == 3
        assert g.degrees() == [2, 2, 2]

    def test_star_has_center_plus_leaves(self) -> None:
        """Star with 3 edges has 4 vertices and center 0 of degree 3."""
        g = build_finite_graph(GraphSpec(kind="star", size=3))
        assert g.k == 4
        assert g.degrees()[0] == 3
        assert g.degrees()[1:] == [1, 1, 1]
        assert g.max_degree == 3

    def test_complete_graph(self) -> None:
        """K_4 has 6 edges."""
        g = build_finite_graph(GraphSpec(kind="complete", size=4))
        assert g.edge_count == 6

    def test_single_vertex(self) -> None:
        """A single vertex has no edges and max degree 0."""
        g = build_finite_graph(GraphSpec(kind="path", size=1))
        assert g.k == 1
        assert g.edge_count == 0
        assert g.max_degree == 0

    def test_custom_edges(self) -> None:
        """Custom edge lists are honoured in both orientations."""
        spec = GraphSpec(kind="custom", size=3, edges=[(0, 1), (2, 1)])
        g = build_finite_graph(spec)
        assert g.adjacency[1][2] == 1
        assert g.adjacency[2][1] == 1
        assert g.adjacency[0][2] == 0

    def test_custom_graph_may_be_disconnected(self) -> None:
        """Isolated vertices are allowed."""
        g = build_finite_graph(GraphSpec(kind="custom", size=3, edges=[(0, 1)]))
        assert g.degrees() == [1, 1, 0]

    def test_default_name(self) -> None:
        """Unnamed graphs are labelled by family and size."""
        g = build_finite_graph(GraphSpec(kind="cycle", size=5))
        assert g.name == "cycle5"


class TestSpecValidation:
    """Tests for family-specific spec invariants."""

    def test_short_cycle_rejected(self) -> None:
        """Cycles need three vertices."""
        with pytest.raises(GraphSpecError) as exc_info:
            build_finite_graph(GraphSpec(kind="cycle", size=2))
        assert exc_info.value.field == "size"

    def test_self_loop_rejected(self) -> None:
        """Self-loops in custom edges are rejected."""
        with pytest.raises(GraphSpecError) as exc_info:
            build_finite_graph(GraphSpec(kind="custom", size=3, edges=[(1, 1)]))
        assert exc_info.value.field == "edges"

    def test_out_of_range_edge_rejected(self) -> None:
        """Edges must connect existing vertices."""
        with pytest.raises(GraphSpecError) as exc_info:
            build_finite_graph(GraphSpec(kind="custom", size=3, edges=[(0, 3)]))
        assert exc_info.value.field == "edges"

    def test_duplicate_edge_rejected(self) -> None:
        """An edge listed twice, in either orientation, is rejected."""
        with pytest.raises(GraphSpecError) as exc_info:
            build_finite_graph(
                GraphSpec(kind="custom", size=3, edges=[(0, 1), (1, 0)])
            )
        assert exc_info.value.field == "edges"

    def test_edges_on_family_rejected(self) -> None:
        """Only custom graphs take an edge list."""
        with pytest.raises(GraphSpecError) as exc_info:
            build_finite_graph(GraphSpec(kind="path", size=3, edges=[(0, 1)]))
        assert exc_info.value.field == "edges"

    def test_potential_length_checked(self) -> None:
        """Potential needs one entry per vertex (size + 1 for stars)."""
        with pytest.raises(GraphSpecError) as exc_info:
            build_finite_graph(GraphSpec(kind="star", size=3, potential=[0, 0, 0]))
        assert exc_info.value.field == "potential"

    def test_zero_size_rejected(self) -> None:
        """Size must be positive."""
        with pytest.raises(ValidationError):
            GraphSpec(kind="path", size=0)


class TestFiniteGraphModel:
    """Tests for FiniteGraph validation."""

    def test_rejects_asymmetric_adjacency(self) -> None:
        """Adjacency must be symmetric."""
        with pytest.raises(ValidationError):
            FiniteGraph(k=2, adjacency=((0, 1), (0, 0)), potential=(0.0, 0.0))

    def test_rejects_self_loop(self) -> None:
        """Diagonal must vanish."""
        with pytest.raises(ValidationError):
            FiniteGraph(k=1, adjacency=((1,),), potential=(0.0,))

    def test_rejects_weighted_edges(self) -> None:
        """Entries must be 0 or 1."""
        with pytest.raises(ValidationError):
            FiniteGraph(k=2, adjacency=((0, 2), (2, 0)), potential=(0.0, 0.0))

    def test_rejects_non_finite_potential(self) -> None:
        """Potential entries must be finite."""
        with pytest.raises(ValidationError):
            FiniteGraph(k=1, adjacency=((0,),), potential=(float("nan"),))

    def test_is_frozen(self) -> None:
        """Graphs are immutable."""
        g = build_finite_graph(GraphSpec(kind="path", size=2))
        with pytest.raises(ValidationError):
            g.k = 3  # type: ignore[misc]


# =============================================================================
# Tests for the Hamiltonian
# =============================================================================


class TestHamiltonianMatrix:
    """Tests for hamiltonian_matrix."""

    def test_adjacency_plus_potential(self) -> None:
        """H = A + diag(Q)."""
        g = build_finite_graph(get_preset("cylinder3"))  # type: ignore[arg-type]
        h = hamiltonian_matrix(g)
        expected = np.array(
            [[0.7, 1.0, 1.0], [1.0, -0.3, 1.0], [1.0, 1.0, 1.1]]
        )
        np.testing.assert_array_equal(h, expected)

    def test_exactly_symmetric(self, preset_graph) -> None:
        """H equals its transpose exactly."""
        g, _ = preset_graph
        h = hamiltonian_matrix(g)
        assert np.array_equal(h, h.T)


# =============================================================================
# Tests for Loading and Serialization
# =============================================================================


class TestParseGraphSpec:
    """Tests for JSON spec parsing."""

    def test_parses_valid_spec(self) -> None:
        """A well-formed spec parses into a GraphSpec."""
        spec = parse_graph_spec('{"kind": "cycle", "size": 3, "potential": [1, 2, 3]}')
        assert spec.kind == "cycle"
        assert spec.potential == [1.0, 2.0, 3.0]

    def test_malformed_json(self) -> None:
        """Broken JSON raises GraphSpecError."""
        with pytest.raises(GraphSpecError, match="Malformed JSON"):
            parse_graph_spec('{"kind": "path", "size": ')

    def test_non_object(self) -> None:
        """A JSON array is not a spec."""
        with pytest.raises(GraphSpecError, match="JSON object"):
            parse_graph_spec("[1, 2]")

    def test_unknown_kind_names_field(self) -> None:
        """Invalid kind is reported with its field name."""
        with pytest.raises(GraphSpecError) as exc_info:
            parse_graph_spec('{"kind": "hypercube", "size": 3}')
        assert exc_info.value.field == "kind"

    def test_missing_size_names_field(self) -> None:
        """Missing size is reported with its field name."""
        with pytest.raises(GraphSpecError) as exc_info:
            parse_graph_spec('{"kind": "path"}')
        assert exc_info.value.field == "size"

    def test_extra_key_names_field(self) -> None:
        """Unknown keys are rejected."""
        with pytest.raises(GraphSpecError) as exc_info:
            parse_graph_spec('{"kind": "path", "size": 2, "colour": "red"}')
        assert exc_info.value.field == "colour"

    def test_bad_edge_names_nested_field(self) -> None:
        """Malformed edges point at the offending entry."""
        with pytest.raises(GraphSpecError) as exc_info:
            parse_graph_spec('{"kind": "custom", "size": 3, "edges": [[0, "x"]]}')
        assert exc_info.value.field is not None
        assert exc_info.value.field.startswith("edges")


class TestLoadGraphSpec:
    """Tests for load_graph_spec."""

    def test_preset_name(self) -> None:
        """Preset names resolve without touching the filesystem."""
        spec, label = load_graph_spec("Ladder")
        assert spec == PRESETS["ladder"]
        assert label == "ladder"

    def test_file_path(self, tmp_path: Path) -> None:
        """A file path is read and labelled by its stem."""
        path = tmp_path / "triangle.json"
        path.write_text(json.dumps({"kind": "cycle", "size": 3}))
        spec, label = load_graph_spec(path)
        assert spec.kind == "cycle"
        assert label == "triangle"

    def test_missing_file(self, tmp_path: Path) -> None:
        """Missing files raise GraphSpecError on the graph field."""
        with pytest.raises(GraphSpecError) as exc_info:
            load_graph_spec(tmp_path / "nope.json")
        assert exc_info.value.field == "graph"

    @pytest.mark.parametrize(
        "name", ["ladder", "ladder-potential", "strip4", "cylinder3", "star3", "point"]
    )
    def test_shipped_specs_match_presets(self, specs_dir: Path, name: str) -> None:
        """Every preset is also shipped as a JSON file."""
        spec, _ = load_graph_spec(specs_dir / f"{name}.json")
        assert spec == PRESETS[name]

    def test_shipped_custom_spec_builds(self, specs_dir: Path) -> None:
        """The custom diamond spec builds with its potential."""
        spec, label = load_graph_spec(specs_dir / "diamond.json")
        g = build_finite_graph(spec, name=label)
        assert g.k == 4
        assert g.edge_count == 5
        assert g.potential == (0.0, 0.5, 0.0, -0.5)


class TestGraphJson:
    """Tests for FiniteGraph serialization."""

    def test_round_trip(self, cylinder) -> None:
        """A graph survives to_json/from_json unchanged."""
        g, _ = cylinder
        assert graph_from_json(graph_to_json(g)) == g

    def test_invalid_payload(self) -> None:
        """Invalid serialized graphs raise GraphSpecError."""
        payload = json.dumps({"k": 2, "adjacency": [[0, 1], [0, 0]], "potential": [0, 0]})
        with pytest.raises(GraphSpecError):
            graph_from_json(payload)
