"""Landau envelope check: max_nu |J_nu(t)| t^(1/3) <= c on a grid of t."""

import math

from pydantic import BaseModel, Field, computed_field

from cpd.config import get_logger
from cpd.exceptions import BoundViolationError
from cpd.workers import ScanWorker

from .functions import LANDAU_CONSTANT, bessel_row

logger = get_logger(__name__)

# Orders kept beyond ceil(t); the row tail is negligible past the turning point
ENVELOPE_TAIL = 40


class LandauPoint(BaseModel):
    """Envelope value at one t."""

    t: float
    nu: int = Field(description="Order attaining max_nu |J_nu(t)|")
    max_abs: float
    scaled: float = Field(description="max_abs * t^(1/3)")


class LandauReport(BaseModel):
    """Result of landau_envelope_check."""

    constant: float
    points: list[LandauPoint]
    max_scaled: float
    argmax_t: float
    skipped: int = 0
    violations: list[LandauPoint] = Field(default_factory=list)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.violations


def _envelope_point(t: float) -> LandauPoint:
    row = bessel_row(math.ceil(t) + ENVELOPE_TAIL, t)
    nu, value = row.max_abs()
    return LandauPoint(t=t, nu=nu, max_abs=value, scaled=value * t ** (1.0 / 3.0))


def landau_envelope_check(
    t_grid: list[float],
    constant: float = LANDAU_CONSTANT,
    strict: bool = False,
) -> LandauReport:
    """
    Check |J_nu(t)| <= c t^(-1/3) over all orders on a grid of t.

    Args:
        t_grid: Arguments; entries t <= 0 are skipped
        constant: Envelope constant c
        strict: Raise on the first violation instead of reporting it

    Returns:
        LandauReport with per-t values and the sharpness indicator
        max_t m(t) t^(1/3)

    Raises:
        BoundViolationError: If strict and the bound fails
        ValueError: If the grid has no positive entries
    """
    positive = [float(t) for t in t_grid if t > 0]
    if not positive:
        raise ValueError("t_grid has no positive entries")

    points = ScanWorker(_envelope_point, name="landau").map(positive)
    violations = [p for p in points if p.scaled > constant]

    if violations:
        worst = max(violations, key=lambda p: p.scaled)
        logger.warning(
            "Landau bound violated",
            t=worst.t,
            nu=worst.nu,
            scaled=worst.scaled,
            constant=constant,
        )
        if strict:
            raise BoundViolationError(
                f"max_nu |J_nu(t)| t^(1/3) = {worst.scaled} exceeds {constant}",
                t=worst.t,
                value=worst.scaled,
                bound=constant,
                nu=worst.nu,
            )

    best = max(points, key=lambda p: p.scaled)
    return LandauReport(
        constant=constant,
        points=points,
        max_scaled=best.scaled,
        argmax_t=best.t,
        skipped=len(t_grid) - len(positive),
        violations=violations,
    )
