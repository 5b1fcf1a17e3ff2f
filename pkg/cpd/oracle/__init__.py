"""Independent ground truth for the closed-form kernel."""

from .compare import (
    ComparisonReport,
    FiberReport,
    VerificationReport,
    WorstEntry,
    compare_kernel_vs_fiber,
    compare_kernel_vs_oracle,
    default_radius,
    kernel_via_fiber_quadrature,
    sample_offsets,
    required_fiber_nodes,
    verify,
)
from .evolution import chebyshev_degree, evolve_direct, lightcone_mass
from .lattice import LatticeBox, TruncatedHamiltonian, assemble_truncated

__all__ = [
    "LatticeBox",
    "TruncatedHamiltonian",
    "assemble_truncated",
    "evolve_direct",
    "chebyshev_degree",
    "lightcone_mass",
    "compare_kernel_vs_oracle",
    "compare_kernel_vs_fiber",
    "kernel_via_fiber_quadrature",
    "required_fiber_nodes",
    "sample_offsets",
    "default_radius",
    "verify",
    "ComparisonReport",
    "FiberReport",
    "VerificationReport",
    "WorstEntry",
]
