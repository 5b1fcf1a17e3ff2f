"""
Finite propagators and the Floquet fiber operator.

For the product Z^d x G_F the fiber operator at quasi-momentum theta is
H_{G_F} shifted by the scalar sum_j 2 cos(2 pi theta_j), so its exponential
factors into a scalar phase times exp(i t H_{G_F}).
"""

from dataclasses import dataclass

import numpy as np

from cpd.exceptions import DimensionMismatchError
from cpd.graphs import FiniteGraph, hamiltonian_matrix

from .eigen import Spectrum, eigendecompose


@dataclass(frozen=True, slots=True)
class FiberPoint:
    """Quasi-momentum theta in the torus [0, 1)^d."""

    theta: tuple[float, ...]

    def __post_init__(self) -> None:
        for j, value in enumerate(self.theta):
            if not 0.0 <= value < 1.0:
                raise ValueError(f"theta[{j}] = {value} is outside [0, 1)")

    @property
    def d(self) -> int:
        """Dimension of the torus."""
        return len(self.theta)

    @property
    def shift(self) -> float:
        """Scalar shift sum_j 2 cos(2 pi theta_j)."""
        return float(np.sum(2.0 * np.cos(2.0 * np.pi * np.asarray(self.theta))))


@dataclass(frozen=True, slots=True)
class PropagatorMatrix:
    """Complex k x k matrix exp(i t H) at a given time."""

    matrix: np.ndarray
    time: float

    def __getitem__(self, index: tuple[int, int]) -> complex:
        return complex(self.matrix[index])

    @property
    def k(self) -> int:
        return int(self.matrix.shape[0])

    def unitarity_defect(self) -> float:
        """Frobenius norm of M M^dagger - I."""
        m = self.matrix
        return float(np.linalg.norm(m @ m.conj().T - np.eye(self.k)))


def finite_propagator(s: Spectrum, t: float) -> PropagatorMatrix:
    """
    exp(i t H_{G_F}) by the spectral theorem.

    M(p, q) = sum_s exp(i t mu_s) phi_s(p) phi_s(q). The result is
    symmetrized so that M == M^T holds exactly.
    """
    phi = s.eigenvectors
    phases = np.exp(1j * t * s.eigenvalues)
    m = (phi * phases) @ phi.T
    m = 0.5 * (m + m.T)
    m.setflags(write=False)
    return PropagatorMatrix(matrix=m, time=float(t))


def spectral_exponential(h: np.ndarray, t: float) -> PropagatorMatrix:
    """exp(i t h) for a real symmetric h through its own eigendecomposition."""
    return finite_propagator(eigendecompose(h), t)


def _check_dimension(theta: FiberPoint, d: int) -> None:
    if theta.d != d:
        raise DimensionMismatchError(
            f"theta has {theta.d} components, expected d = {d}",
            expected=d,
            actual=theta.d,
        )


def fiber_operator(g: FiniteGraph, theta: FiberPoint, d: int) -> np.ndarray:
    """
    The fiber operator H(theta) = (sum_j 2 cos(2 pi theta_j)) Id + H_{G_F}.

    Raises:
        DimensionMismatchError: If theta does not have d components
    """
    _check_dimension(theta, d)
    return hamiltonian_matrix(g) + theta.shift * np.eye(g.k)


def fiber_phase(thetas: np.ndarray, t: float) -> np.ndarray:
    """
    Vectorized scalar factor exp(2 i t sum_j cos(2 pi theta_j)).

    Args:
        thetas: Array of shape (..., d)
        t: Time

    Returns:
        Complex array of shape (...)
    """
    thetas = np.asarray(thetas, dtype=float)
    return np.exp(2j * t * np.sum(np.cos(2.0 * np.pi * thetas), axis=-1))


def fiber_propagator(
    g: FiniteGraph,
    theta: FiberPoint,
    d: int,
    t: float,
    spectrum: Spectrum | None = None,
) -> PropagatorMatrix:
    """
    exp(i t H(theta)) as the scalar phase times exp(i t H_{G_F}).

    Args:
        g: The finite graph
        theta: Quasi-momentum
        d: Lattice dimension
        t: Time
        spectrum: Precomputed spectrum of H_{G_F} (computed if omitted)

    Raises:
        DimensionMismatchError: If theta does not have d components
    """
    _check_dimension(theta, d)
    s = spectrum if spectrum is not None else eigendecompose(hamiltonian_matrix(g))
    phase = complex(fiber_phase(np.asarray(theta.theta), t))
    m = phase * finite_propagator(s, t).matrix
    m.setflags(write=False)
    return PropagatorMatrix(matrix=m, time=float(t))


def floquet_bands(s: Spectrum, d: int, thetas: np.ndarray) -> np.ndarray:
    """
    Band functions E_s(theta) = sum_j 2 cos(2 pi theta_j) + mu_s.

    Args:
        s: Spectrum of H_{G_F}
        d: Lattice dimension
        thetas: Array of shape (n, d)

    Returns:
        Array of shape (n, k); row i holds the Floquet eigenvalues at thetas[i]
    """
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    if thetas.shape[-1] != d:
        raise DimensionMismatchError(
            f"thetas have {thetas.shape[-1]} components, expected d = {d}",
            expected=d,
            actual=thetas.shape[-1],
        )
    shifts = np.sum(2.0 * np.cos(2.0 * np.pi * thetas), axis=-1)
    return shifts[:, None] + s.eigenvalues[None, :]


def spectrum_range(s: Spectrum, d: int) -> tuple[float, float]:
    """Bottom and top of the spectrum of H on Z^d x G_F (union of bands)."""
    return float(s.eigenvalues[0] - 2 * d), float(s.eigenvalues[-1] + 2 * d)
