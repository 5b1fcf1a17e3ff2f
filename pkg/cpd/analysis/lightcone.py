"""Ballistic lightcone of the kernel: offsets beyond ~2t carry negligible amplitude."""

import numpy as np
from pydantic import BaseModel, computed_field

from cpd.bessel import bessel_row
from cpd.config import get_logger
from cpd.graphs import FiniteGraph
from cpd.kernel import truncation_radius
from cpd.spectral import Spectrum, finite_propagator

logger = get_logger(__name__)

# Row extensions tried before giving up on reaching epsilon
MAX_EXTENSIONS = 8


def lightcone_limit(t: float) -> float:
    """Admissible radius 2t + 10 t^(1/3) + 20."""
    return 2.0 * t + 10.0 * t ** (1.0 / 3.0) + 20.0


class LightconeReport(BaseModel):
    """Lightcone radius at one time."""

    graph: str | None
    d: int
    t: float
    epsilon: float
    radius: int
    limit: float

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.radius <= self.limit


def lightcone_profile(
    g: FiniteGraph,
    s: Spectrum,
    t: float,
    epsilon: float,
    d: int = 1,
) -> int:
    """
    Smallest R with |kernel| < epsilon at every offset with ||nu||_inf > R.

    At ||nu||_inf = r the largest entry is
    |J_r(2t)| (max_nu |J_nu(2t)|)^(d-1) max_{p,q} |M(p, q)|.

    Raises:
        ValueError: If t < 0 or epsilon <= 0
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if t == 0:
        return 0

    finite = float(np.max(np.abs(finite_propagator(s, t).matrix)))
    radius = truncation_radius(t)
    for _ in range(MAX_EXTENSIONS):
        row = np.abs(bessel_row(radius, 2.0 * t).values)
        scale = float(np.max(row)) ** (d - 1) * finite
        amplitudes = row * scale
        if amplitudes[-1] < epsilon:
            break
        radius *= 2
    above = np.nonzero(amplitudes >= epsilon)[0]
    result = int(above[-1]) if above.size else 0

    logger.debug("Lightcone radius", graph=g.name, t=t, epsilon=epsilon, radius=result)
    return result


def lightcone_report(
    g: FiniteGraph,
    s: Spectrum,
    t: float,
    epsilon: float = 1e-10,
    d: int = 1,
) -> LightconeReport:
    """lightcone_profile against the limit 2t + 10 t^(1/3) + 20."""
    radius = lightcone_profile(g, s, t, epsilon, d)
    return LightconeReport(
        graph=g.name,
        d=d,
        t=float(t),
        epsilon=epsilon,
        radius=radius,
        limit=lightcone_limit(t) if t > 0 else 0.0,
    )
