"""
Closed-form propagator on Z^d x G_F.

    exp(i t H)(n + v_p, m + v_q)
        = (prod_j i^(n_j - m_j) J_{n_j - m_j}(2t)) exp(i t H_{G_F})(v_p, v_q)

The lattice factor is the free propagator of Z^d; the finite factor comes
from the spectrum of H_{G_F}. Sup-norms and masses factorize the same way.
"""

import math
from collections.abc import Sequence

import numpy as np

from cpd.bessel import bessel_j_signed, bessel_row
from cpd.config import get_logger, get_settings
from cpd.exceptions import DimensionMismatchError, InsufficientResolutionError
from cpd.graphs import FiniteGraph
from cpd.spectral import Spectrum, finite_propagator

from .models import KernelBlock, ProductPoint

logger = get_logger(__name__)

# i^nu indexed by nu mod 4
I_POWERS: tuple[complex, ...] = (1 + 0j, 1j, -1 + 0j, -1j)


def truncation_radius(t: float, tail: int | None = None) -> int:
    """Offset radius ceil(2|t|) + tail beyond which J_nu(2t) is negligible."""
    tail = tail if tail is not None else get_settings().kernel_tail
    return math.ceil(2.0 * abs(t)) + tail


def lattice_factor(nu: Sequence[int], t: float) -> complex:
    """prod_j i^(nu_j) J_{nu_j}(2t), valid for negative t."""
    factor = 1 + 0j
    for v in nu:
        factor *= I_POWERS[v % 4] * bessel_j_signed(v, 2.0 * t)
    return factor


def lattice_vector(t: float, radius: int) -> np.ndarray:
    """
    One-axis lattice factors i^nu J_nu(2t) for nu = -radius..radius.

    Returns:
        Complex array of length 2 * radius + 1, index nu + radius
    """
    row = bessel_row(radius, 2.0 * abs(t)).values
    nus = np.arange(-radius, radius + 1)
    signs = np.where(nus % 2 == 1, -1.0, 1.0)
    values = row[np.abs(nus)] * np.where(nus < 0, signs, 1.0)
    if t < 0:
        values = values * signs
    powers = np.array(I_POWERS)[nus % 4]
    return powers * values


def _check_points(g: FiniteGraph, s: Spectrum, x: ProductPoint, y: ProductPoint) -> None:
    if x.d != y.d:
        raise DimensionMismatchError(
            f"points live in different dimensions: {x.d} and {y.d}",
            expected=x.d,
            actual=y.d,
        )
    if s.k != g.k:
        raise DimensionMismatchError(
            f"spectrum has dimension {s.k}, graph has {g.k} vertices",
            expected=g.k,
            actual=s.k,
        )
    for point in (x, y):
        if not 0 <= point.p < g.k:
            raise ValueError(f"vertex index {point.p} outside 0..{g.k - 1}")


def kernel(
    g: FiniteGraph,
    s: Spectrum,
    x: ProductPoint,
    y: ProductPoint,
    t: float,
) -> complex:
    """
    exp(i t H)(x, y) on Z^d x G_F.

    Depends on x.n and y.n only through their difference.

    Raises:
        DimensionMismatchError: If x and y have different d
    """
    _check_points(g, s, x, y)
    nu = tuple(a - b for a, b in zip(x.n, y.n, strict=True))
    m = finite_propagator(s, t).matrix
    return complex(lattice_factor(nu, t) * m[x.p, y.p])


def kernel_block(
    g: FiniteGraph,
    s: Spectrum,
    nu: Sequence[int],
    t: float,
) -> KernelBlock:
    """Lattice factor at offset nu times the finite propagator."""
    if s.k != g.k:
        raise DimensionMismatchError(
            f"spectrum has dimension {s.k}, graph has {g.k} vertices",
            expected=g.k,
            actual=s.k,
        )
    offset = tuple(int(v) for v in nu)
    factor = lattice_factor(offset, t)
    block = factor * finite_propagator(s, t).matrix
    block.setflags(write=False)
    return KernelBlock(nu=offset, t=float(t), factor=factor, block=block)


def row_mass(
    g: FiniteGraph,
    s: Spectrum,
    t: float,
    nu_max: int,
    d: int = 1,
    source: int = 0,
) -> float:
    """
    sum over ||nu||_inf <= nu_max and all q of |kernel|^2 from a fixed source.

    The box sum factorizes into d copies of sum_{|nu| <= nu_max} J_nu(2t)^2
    times the squared row norm of exp(i t H_{G_F}).

    Raises:
        InsufficientResolutionError: If nu_max < ceil(2t) + 40
    """
    need = truncation_radius(t, tail=40)
    if nu_max < need:
        raise InsufficientResolutionError(
            f"nu_max = {nu_max} is below ceil(2t) + 40 = {need}",
            required=need,
            given=nu_max,
        )
    if not 0 <= source < g.k:
        raise ValueError(f"source vertex {source} outside 0..{g.k - 1}")

    row = bessel_row(nu_max, 2.0 * abs(t)).values
    axis_mass = float(row[0] ** 2 + 2.0 * np.sum(row[1:] ** 2))
    m = finite_propagator(s, t).matrix
    finite_mass = float(np.sum(np.abs(m[source, :]) ** 2))
    return axis_mass**d * finite_mass


def sup_norm_parts(
    g: FiniteGraph,
    s: Spectrum,
    t: float,
    d: int = 1,
) -> tuple[float, float]:
    """
    Lattice envelope (max_nu |J_nu(2t)|)^d and finite factor max_{p,q} |M(p, q)|.

    Raises:
        ValueError: If t <= 0
    """
    if t <= 0:
        raise ValueError(f"sup_norm requires t > 0, got {t}")
    if s.k != g.k:
        raise DimensionMismatchError(
            f"spectrum has dimension {s.k}, graph has {g.k} vertices",
            expected=g.k,
            actual=s.k,
        )
    _, peak = bessel_row(truncation_radius(t), 2.0 * t).max_abs()
    finite = float(np.max(np.abs(finite_propagator(s, t).matrix)))
    return peak**d, finite


def sup_norm(g: FiniteGraph, s: Spectrum, t: float, d: int = 1) -> float:
    """
    sup over all offsets and (p, q) of |exp(i t H)(n + v_p, m + v_q)|.

    Offsets beyond ceil(2t) + tail contribute less than 1e-15, so the
    truncated maximum is the true supremum.
    """
    envelope, finite = sup_norm_parts(g, s, t, d)
    return envelope * finite
