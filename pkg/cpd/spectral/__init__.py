"""Spectral decomposition of H_{G_F} and the Floquet fiber operators."""

from .eigen import Spectrum, eigendecompose
from .propagator import (
    FiberPoint,
    PropagatorMatrix,
    fiber_operator,
    fiber_phase,
    fiber_propagator,
    finite_propagator,
    floquet_bands,
    spectral_exponential,
    spectrum_range,
)

__all__ = [
    "Spectrum",
    "eigendecompose",
    "FiberPoint",
    "PropagatorMatrix",
    "finite_propagator",
    "spectral_exponential",
    "fiber_operator",
    "fiber_phase",
    "fiber_propagator",
    "floquet_bands",
    "spectrum_range",
]
