"""
Direct evolution exp(i t H_trunc) delta_source on the truncated box.

The default path is a Chebyshev expansion of exp(i t H) with H rescaled by
its spectral-radius bound R:

    exp(i z x) = J_0(z) + 2 sum_{m >= 1} i^m J_m(z) T_m(x),  z = R t

truncated at degree ceil(z) + 60 (wider for large z), with Bessel coefficients from cpd.bessel
and only sparse matrix-vector products. A dense eigendecomposition path is
kept as a second, independent check for small boxes.
"""

import math
from typing import Literal

import numpy as np
from scipy import linalg

from cpd.bessel import bessel_row
from cpd.config import get_logger, get_settings
from cpd.exceptions import BoxTooLargeError, ConvergenceError

from .lattice import TruncatedHamiltonian

logger = get_logger(__name__)

EvolutionMethod = Literal["chebyshev", "dense"]

# Extra polynomial degree beyond z = R t
CHEBYSHEV_MARGIN = 60
# Largest admissible trailing coefficient
CHEBYSHEV_TAIL = 1e-15


def chebyshev_degree(h: TruncatedHamiltonian, t: float) -> int:
    """
    Polynomial degree used for time t.

    ceil(z) + 60 for z = R t up to 64; beyond that the margin follows the
    z^(1/3) width of the Bessel turning region.
    """
    z = h.bound * abs(t)
    margin = max(CHEBYSHEV_MARGIN, math.ceil(10.0 * z ** (1.0 / 3.0)) + 20)
    return math.ceil(z) + margin


def _evolve_chebyshev(h: TruncatedHamiltonian, start: np.ndarray, t: float) -> np.ndarray:
    tau = abs(t)
    z = h.bound * tau
    degree = chebyshev_degree(h, t)
    coeffs = bessel_row(degree, z).values

    tail = float(np.max(np.abs(coeffs[-2:])))
    if tail > CHEBYSHEV_TAIL:
        raise ConvergenceError(
            f"Chebyshev tail {tail:.3e} above {CHEBYSHEV_TAIL:.0e} at degree {degree}",
            iterations=degree,
            details={"t": t, "bound": h.bound},
        )

    x = h.matrix / h.bound
    prev = start
    curr = x @ start
    result = coeffs[0] * prev + 2j * coeffs[1] * curr
    power = 1j
    for m in range(2, degree + 1):
        prev, curr = curr, 2.0 * (x @ curr) - prev
        power *= 1j
        result = result + 2.0 * power * coeffs[m] * curr

    # exp(-i tau H) v = conj(exp(i tau H) conj(v)) since H is real
    return result if t >= 0 else result.conj()


def _evolve_dense(h: TruncatedHamiltonian, source: int, t: float) -> np.ndarray:
    limit = get_settings().dense_oracle_limit
    if h.box.size > limit:
        raise BoxTooLargeError(h.box.size, limit)
    values, vectors = linalg.eigh(h.matrix.toarray())
    return vectors @ (np.exp(1j * t * values) * vectors[source, :])


def evolve_direct(
    h: TruncatedHamiltonian,
    source: int,
    t: float,
    method: EvolutionMethod = "chebyshev",
) -> np.ndarray:
    """
    Column exp(i t H_trunc) delta_source.

    Args:
        h: Truncated Hamiltonian
        source: Flat index of the initial delta
        t: Time (any sign)
        method: 'chebyshev' (sparse) or 'dense' (eigendecomposition)

    Returns:
        Complex vector of length N

    Raises:
        ConvergenceError: If the Chebyshev tail does not vanish
        BoxTooLargeError: If the dense path is requested above its limit
    """
    size = h.box.size
    if not 0 <= source < size:
        raise ValueError(f"source {source} outside 0..{size - 1}")

    start = np.zeros(size, dtype=complex)
    start[source] = 1.0
    if t == 0:
        return start

    if method == "dense":
        column = _evolve_dense(h, source, t)
    else:
        column = _evolve_chebyshev(h, start, t)

    logger.debug(
        "Evolved column",
        method=method,
        size=size,
        t=t,
        norm_defect=abs(float(np.linalg.norm(column)) - 1.0),
    )
    return column


def lightcone_mass(
    h: TruncatedHamiltonian,
    column: np.ndarray,
    t: float,
    margin: float = 15.0,
) -> float:
    """
    Probability mass of an evolved column at lattice distance > 2t + margin.

    Distance is ||n||_inf measured from the origin layer, where sources sit.
    """
    far = h.box.lattice_norms() > 2.0 * abs(t) + margin
    return float(np.sum(np.abs(column[far]) ** 2))
