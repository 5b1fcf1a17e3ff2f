"""
Pytest configuration and shared fixtures.
"""

from collections.abc import Iterator
from pathlib import Path

import numpy as np
import pytest
import structlog

from cpd.config import clear_context
from cpd.config.settings import get_settings
from cpd.graphs import FiniteGraph, build_finite_graph, get_preset, hamiltonian_matrix
from cpd.spectral import Spectrum, eigendecompose

PROJECT_ROOT = Path(__file__).resolve().parent.parent
SPECS_DIR = PROJECT_ROOT / "specs"

# Graphs every numerical check runs on
TEST_GRAPHS = ["ladder", "ladder-potential", "strip4", "cylinder3", "star3", "point"]


@pytest.fixture(autouse=True)
def _isolate_runtime() -> Iterator[None]:
    """Fresh settings and default logging around every test."""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    structlog.reset_defaults()
    clear_context()


def build_preset(name: str) -> tuple[FiniteGraph, Spectrum]:
    """Graph and spectrum for a preset name."""
    spec = get_preset(name)
    assert spec is not None
    g = build_finite_graph(spec, name=name)
    return g, eigendecompose(hamiltonian_matrix(g))


# =============================================================================
# Graphs
# =============================================================================


@pytest.fixture
def ladder() -> tuple[FiniteGraph, Spectrum]:
    """P_2 without potential."""
    return build_preset("ladder")


@pytest.fixture
def cylinder() -> tuple[FiniteGraph, Spectrum]:
    """C_3 with Q = [0.7, -0.3, 1.1]."""
    return build_preset("cylinder3")


@pytest.fixture
def point() -> tuple[FiniteGraph, Spectrum]:
    """Single vertex, so the product is the bare lattice."""
    return build_preset("point")


@pytest.fixture(params=TEST_GRAPHS)
def preset_graph(request: pytest.FixtureRequest) -> tuple[FiniteGraph, Spectrum]:
    """Every preset in turn."""
    return build_preset(request.param)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for random cases."""
    return np.random.default_rng(1234)


@pytest.fixture
def specs_dir() -> Path:
    """Directory of shipped JSON graph specs."""
    return SPECS_DIR
