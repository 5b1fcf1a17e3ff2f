"""
Closed-form propagator kernel on Z^d x G_F.

Example usage:
    from cpd.graphs import build_finite_graph, hamiltonian_matrix, get_preset
    from cpd.spectral import eigendecompose
    from cpd.kernel import ProductPoint, kernel

    g = build_finite_graph(get_preset("ladder"))
    s = eigendecompose(hamiltonian_matrix(g))
    amp = kernel(g, s, ProductPoint.of([3], 0), ProductPoint.of([0], 1), t=2.0)
"""

from .evaluate import (
    I_POWERS,
    kernel,
    kernel_block,
    lattice_factor,
    lattice_vector,
    row_mass,
    sup_norm,
    sup_norm_parts,
    truncation_radius,
)
from .models import KernelBlock, ProductPoint
from .packet import DispersiveReport, box_points, dispersive_inequality, evolve_packet

__all__ = [
    "ProductPoint",
    "KernelBlock",
    "I_POWERS",
    "kernel",
    "kernel_block",
    "lattice_factor",
    "lattice_vector",
    "row_mass",
    "sup_norm",
    "sup_norm_parts",
    "truncation_radius",
    "evolve_packet",
    "dispersive_inequality",
    "DispersiveReport",
    "box_points",
]
