"""
Cyclic Jacobi eigensolver for small dense real symmetric matrices.

Each sweep visits every off-diagonal pair (p, q) once and applies the plane
rotation that annihilates H[p, q]. Iteration stops when the off-diagonal
Frobenius norm drops below ``tolerance * ||H||_F``; convergence is quadratic
once the off-diagonal part is small.
"""

from dataclasses import dataclass
from typing import Any

import numpy as np

from cpd.config import get_logger, get_settings
from cpd.exceptions import ConvergenceError, NumericalError

logger = get_logger(__name__)

# Relative asymmetry above which input is rejected
SYMMETRY_TOLERANCE = 1e-12


@dataclass(frozen=True, slots=True)
class Spectrum:
    """
    Eigendecomposition of H_{G_F}.

    Attributes:
        eigenvalues: Nondecreasing eigenvalues mu_s, shape (k,)
        eigenvectors: Orthogonal matrix, column s is the unit eigenvector of mu_s
        sweeps: Jacobi sweeps spent
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int = 0

    @property
    def k(self) -> int:
        """Dimension of the decomposed matrix."""
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        """Return Phi diag(mu) Phi^T."""
        phi = self.eigenvectors
        return (phi * self.eigenvalues) @ phi.T

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation."""
        return {
            "eigenvalues": [float(v) for v in self.eigenvalues],
            "eigenvectors": [[float(v) for v in row] for row in self.eigenvectors],
            "sweeps": self.sweeps,
        }


def _off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the off-diagonal part."""
    return float(np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0)))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Apply the Jacobi rotation zeroing a[p, q] in place."""
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - s * col_q
    a[:, q] = s * col_p + c * col_q

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - s * row_q
    a[q, :] = s * row_p + c * row_q
    a[p, q] = a[q, p] = 0.0

    vec_p = v[:, p].copy()
    vec_q = v[:, q].copy()
    v[:, p] = c * vec_p - s * vec_q
    v[:, q] = s * vec_p + c * vec_q


def eigendecompose(
    h: np.ndarray,
    tolerance: float | None = None,
    max_sweeps: int | None = None,
) -> Spectrum:
    """
    Diagonalize a real symmetric matrix with cyclic Jacobi rotations.

    Args:
        h: Real symmetric k x k matrix
        tolerance: Relative off-diagonal stopping threshold
            (default: settings.jacobi_tolerance)
        max_sweeps: Sweep limit (default: settings.jacobi_max_sweeps)

    Returns:
        Spectrum with ascending eigenvalues; degenerate clusters get an
        orthonormal basis of their eigenspace

    Raises:
        NumericalError: If h is not square or not symmetric
        ConvergenceError: If the sweep limit is reached
    """
    settings = get_settings()
    tolerance = tolerance if tolerance is not None else settings.jacobi_tolerance
    max_sweeps = max_sweeps if max_sweeps is not None else settings.jacobi_max_sweeps

    h = np.asarray(h, dtype=float)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise NumericalError(f"Expected a square matrix, got shape {h.shape}")

    scale = float(np.linalg.norm(h))
    asymmetry = float(np.max(np.abs(h - h.T))) if h.size else 0.0
    if asymmetry > SYMMETRY_TOLERANCE * max(1.0, scale):
        raise NumericalError(
            "Matrix is not symmetric",
            {"max_asymmetry": asymmetry},
        )

    k = h.shape[0]
    a = 0.5 * (h + h.T)
    v = np.eye(k)
    threshold = tolerance * scale

    sweeps = 0
    while _off_norm(a) > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps",
                iterations=sweeps,
                details={"off_norm": _off_norm(a), "threshold": threshold},
            )
        for p in range(k - 1):
            for q in range(p + 1, k):
                if a[p, q] != 0.0:
                    _rotate(a, v, p, q)
        sweeps += 1

    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    eigenvalues = eigenvalues[order]
    eigenvectors = v[:, order]

    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)

    logger.debug("Jacobi converged", k=k, sweeps=sweeps)
    return Spectrum(eigenvalues=eigenvalues, eigenvectors=eigenvectors, sweeps=sweeps)
