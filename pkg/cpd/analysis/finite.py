"""No dispersion on a finite graph: exp(i t H_{G_F}) delta keeps its sup-norm."""

import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, Field, computed_field

from cpd.config import get_logger
from cpd.exceptions import BoundViolationError
from cpd.graphs import FiniteGraph
from cpd.spectral import Spectrum

logger = get_logger(__name__)


class NoDispersionReport(BaseModel):
    """
    Sup-norms of psi_t = exp(i t H_{G_F}) delta_source over a grid.

    ||psi_t||_2 = 1 on k vertices forces ||psi_t||_inf >= k^(-1/2).
    """

    graph: str | None
    k: int
    source: int
    points: int
    bound: float = Field(description="k^(-1/2)")
    min_sup: float
    argmin_t: float
    max_return: float = Field(description="max over t != 0 of |psi_t(source)|")
    argmax_return_t: float | None
    violations: list[float] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.violations


def finite_no_dispersion(
    g: FiniteGraph,
    s: Spectrum,
    t_grid: Sequence[float],
    source: int = 0,
    strict: bool = False,
) -> NoDispersionReport:
    """
    Check ||exp(i t H_{G_F}) delta_source||_inf >= k^(-1/2) at every t.

    The comparison is exact, without tolerance. The return amplitude
    |psi_t(source)| is reported as a recurrence indicator.

    Raises:
        ValueError: If the grid is empty or the source is out of range
        BoundViolationError: If strict and the bound fails
    """
    grid = [float(t) for t in t_grid]
    if not grid:
        raise ValueError("t_grid is empty")
    if not 0 <= source < g.k:
        raise ValueError(f"source vertex {source} outside 0..{g.k - 1}")

    bound = 1.0 / math.sqrt(g.k)
    phi = s.eigenvectors
    weights = phi[source, :]

    sups = np.empty(len(grid))
    returns = np.empty(len(grid))
    for i, t in enumerate(grid):
        psi = (phi * np.exp(1j * t * s.eigenvalues)) @ weights
        sups[i] = np.max(np.abs(psi))
        returns[i] = abs(psi[source])

    violations = [t for t, v in zip(grid, sups, strict=True) if v < bound]
    moving = [i for i, t in enumerate(grid) if t != 0.0]
    if moving:
        best = max(moving, key=lambda i: returns[i])
        max_return, argmax_t = float(returns[best]), grid[best]
    else:
        max_return, argmax_t = float(returns[0]), None

    worst = int(np.argmin(sups))
    report = NoDispersionReport(
        graph=g.name,
        k=g.k,
        source=source,
        points=len(grid),
        bound=bound,
        min_sup=float(sups[worst]),
        argmin_t=grid[worst],
        max_return=max_return,
        argmax_return_t=argmax_t,
        violations=violations,
    )

    if violations:
        logger.error(
            "Pigeonhole bound violated",
            graph=g.name,
            t=grid[worst],
            sup=report.min_sup,
            bound=bound,
        )
        if strict:
            raise BoundViolationError(
                f"||psi_t||_inf = {report.min_sup} below k^(-1/2) = {bound}",
                t=grid[worst],
                value=report.min_sup,
                bound=bound,
            )
    return report
