"""
Loading graph specs from JSON files or preset names.

Malformed input is reported as GraphSpecError with the offending field so
the CLI can point at it.
"""

import json
from pathlib import Path

from pydantic import ValidationError

from cpd.config import get_logger
from cpd.exceptions import GraphSpecError

from .models import FiniteGraph, GraphSpec
from .presets import get_preset

logger = get_logger(__name__)


def _field_from_error(error: ValidationError) -> str | None:
    """Dotted location of the first validation error."""
    errors = error.errors()
    if not errors:
        return None
    loc = errors[0].get("loc", ())
    return ".".join(str(part) for part in loc) or None


def parse_graph_spec(data: str) -> GraphSpec:
    """
    Parse a JSON graph spec.

    Raises:
        GraphSpecError: On invalid JSON or invalid/missing fields
    """
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as e:
        raise GraphSpecError(
            f"Malformed JSON at line {e.lineno} column {e.colno}: {e.msg}",
            field=None,
        ) from e

    if not isinstance(raw, dict):
        raise GraphSpecError("Graph spec must be a JSON object", field=None)

    try:
        return GraphSpec.model_validate(raw)
    except ValidationError as e:
        field = _field_from_error(e)
        raise GraphSpecError(
            f"Invalid graph spec field '{field}': {e.errors()[0]['msg']}",
            field=field,
        ) from e


def load_graph_spec(source: str | Path) -> tuple[GraphSpec, str]:
    """
    Load a graph spec from a preset name or a JSON file path.

    Args:
        source: Preset name (e.g. 'ladder') or path to a JSON spec

    Returns:
        Tuple of (spec, label) where label names the graph in reports

    Raises:
        GraphSpecError: If the file is missing, unreadable or invalid
    """
    if isinstance(source, str):
        preset = get_preset(source)
        if preset is not None:
            return preset, source.lower()

    path = Path(source)
    if not path.is_file():
        raise GraphSpecError(f"Graph spec file not found: {path}", field="graph")

    logger.debug("Loading graph spec", path=str(path))
    return parse_graph_spec(path.read_text(encoding="utf-8")), path.stem


def graph_to_json(g: FiniteGraph) -> str:
    """Serialize a FiniteGraph."""
    return g.to_json()


def graph_from_json(data: str) -> FiniteGraph:
    """
    Deserialize a FiniteGraph.

    Raises:
        GraphSpecError: If the payload does not describe a valid graph
    """
    try:
        return FiniteGraph.from_json(data)
    except ValidationError as e:
        field = _field_from_error(e)
        raise GraphSpecError(
            f"Invalid finite graph: {e.errors()[0]['msg']}", field=field
        ) from e
