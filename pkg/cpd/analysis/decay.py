"""
Dispersive decay of the propagator sup-norm.

sup |exp(i t H)(x, y)| = (max_nu |J_nu(2t)|)^d * max_{p,q} |exp(i t H_{G_F})(p, q)|,
and the Landau bound on the first factor gives

    sup_norm(t) * t^(d/3) <= (c 2^(-1/3))^d,   c = LANDAU_CONSTANT.

The decay exponent is fit on the lattice envelope, since the finite factor
oscillates (e.g. max(|cos t|, |sin t|) for the ladder).
"""

import csv
import math
from collections.abc import Sequence
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, Field, computed_field, model_validator

from cpd.bessel import LANDAU_CONSTANT
from cpd.config import get_logger
from cpd.exceptions import BoundViolationError, InsufficientDataError
from cpd.graphs import FiniteGraph
from cpd.kernel import sup_norm_parts
from cpd.spectral import Spectrum
from cpd.workers import ScanWorker

logger = get_logger(__name__)

# Per-dimension constant of the dispersion envelope
DISPERSION_CONSTANT = LANDAU_CONSTANT * 2.0 ** (-1.0 / 3.0)
DISPERSION_SLACK = 1e-6

MIN_FIT_POINTS = 8
DEFAULT_FIT_T_MIN = 10.0
DEFAULT_SHARPNESS_T_MIN = 50.0
POINTS_PER_DECADE = 32

CSV_COLUMNS = ("t", "sup_norm", "envelope", "bound")


def dispersion_bound(t: float, d: int) -> float:
    """(c 2^(-1/3))^d t^(-d/3)."""
    return DISPERSION_CONSTANT**d * t ** (-d / 3.0)


def log_spaced_grid(
    t_min: float,
    t_max: float,
    points: int | None = None,
) -> list[float]:
    """
    Log-spaced times from t_min to t_max inclusive.

    Args:
        t_min: First time, > 0
        t_max: Last time, > t_min
        points: Number of points (default: 32 per decade)
    """
    if not 0 < t_min < t_max:
        raise ValueError(f"need 0 < t_min < t_max, got {t_min}, {t_max}")
    if points is None:
        points = math.ceil(POINTS_PER_DECADE * math.log10(t_max / t_min)) + 1
    if points < 2:
        raise ValueError(f"need at least 2 points, got {points}")
    return [float(t) for t in np.geomspace(t_min, t_max, points)]


# =============================================================================
# Series
# =============================================================================


class DecaySeries(BaseModel):
    """
    Sup-norm samples of the propagator over increasing times.

    Attributes:
        d: Lattice dimension
        t: Strictly increasing positive times
        sup_norm: sup |kernel(t)|
        envelope: Lattice factor (max_nu |J_nu(2t)|)^d
        bound: Dispersion envelope (c 2^(-1/3))^d t^(-d/3)
    """

    d: int = Field(ge=1)
    t: list[float]
    sup_norm: list[float]
    envelope: list[float]
    bound: list[float]

    @model_validator(mode="after")
    def check_samples(self) -> "DecaySeries":
        n = len(self.t)
        for name in ("sup_norm", "envelope", "bound"):
            if len(getattr(self, name)) != n:
                raise ValueError(f"{name} has {len(getattr(self, name))} entries, t has {n}")
        if any(t <= 0 for t in self.t):
            raise ValueError("t entries must be positive")
        if any(b <= a for a, b in zip(self.t, self.t[1:], strict=False)):
            raise ValueError("t entries must be strictly increasing")
        if any(v <= 0 for v in self.sup_norm):
            raise ValueError("sup_norm entries must be positive")
        return self

    def __len__(self) -> int:
        return len(self.t)

    def scaled(self) -> np.ndarray:
        """sup_norm * t^(d/3)."""
        t = np.asarray(self.t)
        return np.asarray(self.sup_norm) * t ** (self.d / 3.0)

    @computed_field  # type: ignore[prop-decorator]
    @property
    def violations(self) -> list[float]:
        """Times where sup_norm * t^(d/3) exceeds the envelope constant."""
        limit = DISPERSION_CONSTANT**self.d + DISPERSION_SLACK
        return [t for t, v in zip(self.t, self.scaled(), strict=True) if v > limit]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return not self.violations

    def to_csv(self, path: str | Path) -> None:
        """Write the columns t, sup_norm, envelope, bound with full precision."""
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in zip(self.t, self.sup_norm, self.envelope, self.bound, strict=True):
                writer.writerow([format(v, ".17g") for v in row])

    @classmethod
    def from_csv(cls, path: str | Path, d: int | None = None) -> "DecaySeries":
        """
        Read a series written by to_csv.

        When d is omitted it is recovered from the bound column at the row
        where c 2^(-1/3) t^(-1/3) is furthest from 1. Series whose times all
        sit near t = (c 2^(-1/3))^3 carry no information about d.

        Raises:
            ValueError: If columns are missing or d cannot be inferred
            InsufficientDataError: If the file has no rows
        """
        with Path(path).open(newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            missing = set(CSV_COLUMNS) - set(reader.fieldnames or ())
            if missing:
                raise ValueError(f"CSV is missing columns {sorted(missing)}")
            rows = [{k: float(row[k]) for k in CSV_COLUMNS} for row in reader]
        if not rows:
            raise InsufficientDataError("CSV has no rows", required=1, available=0)

        if d is None:
            d = _infer_dimension(rows)
        return cls(
            d=d,
            t=[r["t"] for r in rows],
            sup_norm=[r["sup_norm"] for r in rows],
            envelope=[r["envelope"] for r in rows],
            bound=[r["bound"] for r in rows],
        )


# Smallest |log(c t^(-1/3))| from which d is inferred
MIN_LOG_BASE = 0.05


def _infer_dimension(rows: list[dict[str, float]]) -> int:
    best = max(
        rows, key=lambda r: abs(math.log(DISPERSION_CONSTANT * r["t"] ** (-1.0 / 3.0)))
    )
    base = math.log(DISPERSION_CONSTANT * best["t"] ** (-1.0 / 3.0))
    if abs(base) < MIN_LOG_BASE:
        raise ValueError(
            "cannot infer the dimension from the bound column near "
            f"t = {best['t']:.4g}; pass d explicitly"
        )
    return max(1, round(math.log(best["bound"]) / base))


class DecayFit(BaseModel):
    """Least-squares line through log sup versus log t."""

    exponent: float
    log_intercept: float
    max_residual: float = Field(ge=0.0)
    points: int
    t_min: float
    source: str


# =============================================================================
# Scans and fits
# =============================================================================


def dispersion_scan(
    g: FiniteGraph,
    s: Spectrum,
    d: int,
    t_grid: Sequence[float],
    strict: bool = False,
) -> DecaySeries:
    """
    Sup-norm of the kernel at every t of the grid.

    Args:
        g: The finite graph
        s: Spectrum of H_{G_F}
        d: Lattice dimension
        t_grid: Strictly increasing positive times
        strict: Raise on the first envelope violation

    Raises:
        ValueError: If a time is not positive or the grid is not increasing
        BoundViolationError: If strict and sup_norm * t^(d/3) exceeds the envelope
    """
    grid = [float(t) for t in t_grid]
    if not grid:
        raise ValueError("t_grid is empty")
    if any(t <= 0 for t in grid):
        raise ValueError("dispersion_scan requires all t > 0")

    parts = ScanWorker(lambda t: sup_norm_parts(g, s, t, d), name="dispersion").map(grid)
    series = DecaySeries(
        d=d,
        t=grid,
        sup_norm=[envelope * finite for envelope, finite in parts],
        envelope=[envelope for envelope, _ in parts],
        bound=[dispersion_bound(t, d) for t in grid],
    )

    if series.violations:
        worst_t = series.violations[0]
        i = grid.index(worst_t)
        logger.error(
            "Dispersion envelope violated",
            graph=g.name,
            d=d,
            t=worst_t,
            sup_norm=series.sup_norm[i],
            bound=series.bound[i],
        )
        if strict:
            raise BoundViolationError(
                f"sup_norm(t) t^(d/3) exceeds {DISPERSION_CONSTANT**d:.6f} at t = {worst_t}",
                t=worst_t,
                value=float(series.scaled()[i]),
                bound=DISPERSION_CONSTANT**d + DISPERSION_SLACK,
            )

    logger.info(
        "Dispersion scan finished",
        graph=g.name,
        d=d,
        points=len(grid),
        max_scaled=float(np.max(series.scaled())),
        passed=series.passed,
    )
    return series


def running_max_envelope(values: Sequence[float]) -> np.ndarray:
    """Upper envelope max_{s >= t} v(s) of a decaying, oscillating series."""
    v = np.asarray(values, dtype=float)
    return np.maximum.accumulate(v[::-1])[::-1]


def fit_decay_exponent(
    series: DecaySeries,
    t_min: float = DEFAULT_FIT_T_MIN,
    source: Literal["envelope", "sup_norm"] = "envelope",
) -> DecayFit:
    """
    Slope of log(values) against log(t) over t >= t_min.

    Args:
        series: Samples to fit
        t_min: Smallest time included
        source: 'envelope' fits the lattice factor; 'sup_norm' fits the
            running maximum of the raw sup-norms

    Raises:
        InsufficientDataError: If fewer than 8 samples have t >= t_min
    """
    t = np.asarray(series.t)
    if source == "envelope":
        values = np.asarray(series.envelope)
    else:
        values = running_max_envelope(series.sup_norm)

    mask = t >= t_min
    available = int(np.count_nonzero(mask))
    if available < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"{available} samples with t >= {t_min}, need {MIN_FIT_POINTS}",
            required=MIN_FIT_POINTS,
            available=available,
        )

    x = np.log(t[mask])
    y = np.log(values[mask])
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (slope * x + intercept))))

    fit = DecayFit(
        exponent=float(slope),
        log_intercept=float(intercept),
        max_residual=residual,
        points=available,
        t_min=float(t_min),
        source=source,
    )
    logger.info("Fitted decay exponent", **fit.model_dump())
    return fit


def sharpness_indicator(
    series: DecaySeries,
    t_min: float = DEFAULT_SHARPNESS_T_MIN,
) -> float:
    """
    max over t >= t_min of envelope * t^(d/3).

    Stays bounded away from zero when the t^(-d/3) rate is sharp.
    """
    t = np.asarray(series.t)
    mask = t >= t_min
    if not np.any(mask):
        raise InsufficientDataError(
            f"no samples with t >= {t_min}", required=1, available=0
        )
    scaled = np.asarray(series.envelope)[mask] * t[mask] ** (series.d / 3.0)
    return float(np.max(scaled))
