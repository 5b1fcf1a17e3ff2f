"""
Unit tests for dispersion scans, decay fits, the finite-graph bound and the lightcone.
"""

import math
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import special

from cpd.analysis import (
    DISPERSION_CONSTANT,
    DecaySeries,
    dispersion_bound,
    dispersion_scan,
    finite_no_dispersion,
    fit_decay_exponent,
    lightcone_limit,
    lightcone_profile,
    lightcone_report,
    log_spaced_grid,
    running_max_envelope,
    sharpness_indicator,
)
from cpd.exceptions import BoundViolationError, InsufficientDataError
from cpd.graphs import GraphSpec, build_finite_graph, hamiltonian_matrix
from cpd.spectral import eigendecompose, finite_propagator


def power_law_series(exponent: float, d: int = 1) -> DecaySeries:
    """Synthetic series with sup_norm = envelope = t^exponent."""
    t = log_spaced_grid(1.0, 1000.0, 40)
    values = [x**exponent for x in t]
    return DecaySeries(
        d=d,
        t=t,
        sup_norm=values,
        envelope=values,
        bound=[dispersion_bound(x, d) for x in t],
    )


# =============================================================================
# Tests for Grids and Series
# =============================================================================


class TestLogSpacedGrid:
    """Tests for log_spaced_grid."""

    def test_endpoints_and_count(self) -> None:
        """Grid includes both ends."""
        grid = log_spaced_grid(0.1, 500.0, 200)
        assert len(grid) == 200
        assert grid[0] == pytest.approx(0.1)
        assert grid[-1] == pytest.approx(500.0)
        assert all(b > a for a, b in zip(grid, grid[1:]))

    def test_default_density(self) -> None:
        """Default is 32 points per decade."""
        assert len(log_spaced_grid(1.0, 1000.0)) == 97

    @pytest.mark.parametrize("t_min,t_max", [(0.0, 1.0), (5.0, 5.0), (10.0, 1.0)])
    def test_invalid_range(self, t_min: float, t_max: float) -> None:
        """Need 0 < t_min < t_max."""
        with pytest.raises(ValueError):
            log_spaced_grid(t_min, t_max, 10)


class TestDecaySeries:
    """Tests for the DecaySeries model."""

    def test_rejects_non_increasing_times(self) -> None:
        """t must be strictly increasing."""
        with pytest.raises(ValidationError):
            DecaySeries(d=1, t=[1.0, 1.0], sup_norm=[1, 1], envelope=[1, 1], bound=[1, 1])

    def test_rejects_non_positive_sup(self) -> None:
        """sup_norm entries are positive."""
        with pytest.raises(ValidationError):
            DecaySeries(d=1, t=[1.0, 2.0], sup_norm=[1, 0], envelope=[1, 1], bound=[1, 1])

    def test_rejects_ragged_columns(self) -> None:
        """All columns have one entry per time."""
        with pytest.raises(ValidationError):
            DecaySeries(d=1, t=[1.0, 2.0], sup_norm=[1], envelope=[1, 1], bound=[1, 1])

    def test_csv_round_trip_infers_dimension(self, tmp_path: Path, cylinder) -> None:
        """CSV keeps full precision and d is recovered from the bound column."""
        g, s = cylinder
        series = dispersion_scan(g, s, 2, log_spaced_grid(0.5, 200.0, 20))
        path = tmp_path / "series.csv"
        series.to_csv(path)

        assert path.read_text().splitlines()[0] == "t,sup_norm,envelope,bound"
        loaded = DecaySeries.from_csv(path)
        assert loaded.d == 2
        assert loaded.t == series.t
        assert loaded.sup_norm == series.sup_norm

    def test_csv_infers_dimension_across_unit_bound(self, tmp_path: Path) -> None:
        """A series ending where the one-dimensional bound equals 1 still gives d."""
        crossing = DISPERSION_CONSTANT**3
        t = [0.1, 0.15, 0.2, crossing]
        series = DecaySeries(
            d=3,
            t=t,
            sup_norm=[0.5] * 4,
            envelope=[0.5] * 4,
            bound=[dispersion_bound(x, 3) for x in t],
        )
        path = tmp_path / "crossing.csv"
        series.to_csv(path)
        assert DecaySeries.from_csv(path).d == 3

    def test_csv_dimension_not_inferable(self, tmp_path: Path) -> None:
        """Near the unit crossing d must be given explicitly."""
        crossing = DISPERSION_CONSTANT**3
        series = DecaySeries(
            d=2,
            t=[crossing],
            sup_norm=[0.5],
            envelope=[0.5],
            bound=[dispersion_bound(crossing, 2)],
        )
        path = tmp_path / "single.csv"
        series.to_csv(path)
        with pytest.raises(ValueError, match="pass d explicitly"):
            DecaySeries.from_csv(path)
        assert DecaySeries.from_csv(path, d=2).d == 2

    def test_csv_missing_columns(self, tmp_path: Path) -> None:
        """Files without the expected header are rejected."""
        path = tmp_path / "bad.csv"
        path.write_text("t,value\n1,2\n")
        with pytest.raises(ValueError, match="missing columns"):
            DecaySeries.from_csv(path)


# =============================================================================
# Tests for Dispersion Scans
# =============================================================================


class TestDispersionScan:
    """Tests for dispersion_scan."""

    def test_single_vertex_is_bessel_envelope(self, point) -> None:
        """For a point, sup_norm(t) = max_nu |J_nu(2t)| on t = 1..100."""
        g, s = point
        grid = [float(t) for t in range(1, 101)]
        series = dispersion_scan(g, s, 1, grid)
        for t, value in zip(grid, series.sup_norm):
            expected = np.max(np.abs(special.jv(np.arange(0, int(2 * t) + 60), 2 * t)))
            assert value == pytest.approx(float(expected), abs=1e-13)
        assert series.sup_norm == series.envelope

    @pytest.mark.parametrize("d", [1, 2])
    def test_envelope_holds_for_all_graphs(self, preset_graph, d: int) -> None:
        """sup_norm(t) t^(d/3) <= (c 2^(-1/3))^d + 1e-6 on [0.1, 500]."""
        g, s = preset_graph
        series = dispersion_scan(g, s, d, log_spaced_grid(0.1, 500.0, 200))
        assert series.passed
        assert float(np.max(series.scaled())) <= DISPERSION_CONSTANT**d + 1e-6

    def test_two_dimensional_ladder_bound(self, ladder) -> None:
        """Every entry is below 0.6236^2 t^(-2/3) + 1e-6 for Z^2 x P_2."""
        g, s = ladder
        series = dispersion_scan(g, s, 2, log_spaced_grid(0.1, 500.0, 200))
        for t, value in zip(series.t, series.sup_norm):
            assert value <= 0.6236**2 * t ** (-2.0 / 3.0) + 1e-6

    def test_lattice_factor_ratio(self, ladder) -> None:
        """Envelope ratio between t = 80 and t = 10 is within 15% of 8^(-1/3)."""
        g, s = ladder
        series = dispersion_scan(g, s, 1, [10.0, 80.0])
        ratio = series.envelope[1] / series.envelope[0]
        assert abs(ratio - 0.5) <= 0.15 * 0.5

    def test_rejects_non_positive_time(self, ladder) -> None:
        """All times must be positive."""
        g, s = ladder
        with pytest.raises(ValueError):
            dispersion_scan(g, s, 1, [0.0, 1.0])

    def test_violation_flagged(self, ladder, monkeypatch: pytest.MonkeyPatch) -> None:
        """Values above the envelope are reported, and raised when strict."""
        g, s = ladder
        monkeypatch.setattr(
            "cpd.analysis.decay.sup_norm_parts", lambda g, s, t, d: (1.0, 1.0)
        )
        series = dispersion_scan(g, s, 1, [1.0, 2.0])
        assert not series.passed
        assert series.violations == [1.0, 2.0]

        with pytest.raises(BoundViolationError) as exc_info:
            dispersion_scan(g, s, 1, [1.0, 2.0], strict=True)
        assert exc_info.value.t == 1.0


# =============================================================================
# Tests for Fits and Sharpness
# =============================================================================


class TestFitDecayExponent:
    """Tests for fit_decay_exponent."""

    @pytest.mark.parametrize("exponent", [-1.0 / 3.0, -2.0 / 3.0, -1.5])
    def test_exact_power_law(self, exponent: float) -> None:
        """Synthetic power laws are recovered exactly."""
        fit = fit_decay_exponent(power_law_series(exponent), t_min=1.0)
        assert fit.exponent == pytest.approx(exponent, abs=1e-10)
        assert fit.max_residual < 1e-12
        assert fit.log_intercept == pytest.approx(0.0, abs=1e-10)

    @pytest.mark.parametrize("d", [1, 2])
    def test_envelope_decays_at_sharp_rate(self, point, d: int) -> None:
        """Envelope exponent is -d/3 within 0.05 on [10, 500]."""
        g, s = point
        series = dispersion_scan(g, s, d, log_spaced_grid(10.0, 500.0, 32))
        fit = fit_decay_exponent(series, t_min=10.0)
        assert fit.exponent == pytest.approx(-d / 3.0, abs=0.05)
        assert fit.points == 32

    def test_too_few_points(self) -> None:
        """At least 8 samples above t_min are required."""
        with pytest.raises(InsufficientDataError) as exc_info:
            fit_decay_exponent(power_law_series(-0.5), t_min=700.0)
        assert exc_info.value.required == 8

    def test_raw_series_uses_running_maximum(self) -> None:
        """Raw sup-norm fits see the running-maximum envelope."""
        series = power_law_series(-1.0 / 3.0)
        fit = fit_decay_exponent(series, t_min=1.0, source="sup_norm")
        assert fit.exponent == pytest.approx(-1.0 / 3.0, abs=1e-10)
        assert fit.source == "sup_norm"

    def test_running_max_envelope(self) -> None:
        """Suffix maxima of an oscillating series."""
        np.testing.assert_array_equal(
            running_max_envelope([3.0, 1.0, 2.0, 0.5]), [3.0, 2.0, 2.0, 0.5]
        )


class TestSharpness:
    """Tests for sharpness_indicator."""

    @pytest.mark.parametrize("d", [1, 2])
    def test_indicator_above_floor(self, ladder, d: int) -> None:
        """max envelope t^(d/3) over [50, 500] stays above 0.3^d."""
        g, s = ladder
        series = dispersion_scan(g, s, d, log_spaced_grid(50.0, 500.0, 64))
        indicator = sharpness_indicator(series, t_min=50.0)
        assert indicator >= 0.3**d
        assert indicator <= DISPERSION_CONSTANT**d

    def test_no_samples(self) -> None:
        """An empty window is an error."""
        with pytest.raises(InsufficientDataError):
            sharpness_indicator(power_law_series(-0.3), t_min=5000.0)


# =============================================================================
# Tests for the Finite-Graph Bound
# =============================================================================


class TestFiniteNoDispersion:
    """Tests for finite_no_dispersion."""

    def test_pigeonhole_on_random_times(self, preset_graph, rng: np.random.Generator) -> None:
        """||psi_t||_inf >= k^(-1/2) exactly for 1000 random t."""
        g, s = preset_graph
        grid = [float(t) for t in rng.uniform(0.0, 1000.0, 1000)]
        for source in range(g.k):
            report = finite_no_dispersion(g, s, grid, source=source)
            assert report.passed
            assert report.min_sup >= 1.0 / math.sqrt(g.k)

    def test_ladder_analytic(self, ladder, rng: np.random.Generator) -> None:
        """For P_2, ||psi_t||_inf = max(|cos t|, |sin t|)."""
        _, s = ladder
        for t in rng.uniform(0.0, 100.0, 200):
            sup = float(np.max(np.abs(finite_propagator(s, t).matrix[:, 0])))
            assert sup == pytest.approx(max(abs(math.cos(t)), abs(math.sin(t))), abs=1e-12)

    def test_ladder_bound_attained(self, ladder) -> None:
        """The P_2 minimum over a fine grid approaches 2^(-1/2)."""
        g, s = ladder
        report = finite_no_dispersion(g, s, np.linspace(0.0, 10.0, 10001))
        assert report.min_sup >= 2**-0.5
        assert report.min_sup == pytest.approx(2**-0.5, abs=1e-3)

    def test_time_zero(self, preset_graph) -> None:
        """At t = 0 the state is the delta itself."""
        g, s = preset_graph
        report = finite_no_dispersion(g, s, [0.0])
        assert report.min_sup == pytest.approx(1.0, abs=1e-14)
        assert report.argmax_return_t is None

    def test_triangle_recurrence(self) -> None:
        """C_3 returns to its initial vertex on [0, 200] with step 0.01."""
        g = build_finite_graph(GraphSpec(kind="cycle", size=3))
        s = eigendecompose(hamiltonian_matrix(g))
        grid = [0.01 * i for i in range(20001)]
        report = finite_no_dispersion(g, s, grid)
        assert report.passed
        assert report.max_return >= 0.99

    def test_triangle_exact_return(self) -> None:
        """psi_t(source) = e^(2it)/3 + 2 e^(-it)/3 has modulus 1 at t = 2 pi / 3."""
        g = build_finite_graph(GraphSpec(kind="cycle", size=3))
        s = eigendecompose(hamiltonian_matrix(g))
        report = finite_no_dispersion(g, s, [2.0 * math.pi / 3.0])
        assert report.max_return == pytest.approx(1.0, abs=1e-12)

    def test_invalid_input(self, ladder) -> None:
        """Empty grids and unknown sources are rejected."""
        g, s = ladder
        with pytest.raises(ValueError):
            finite_no_dispersion(g, s, [])
        with pytest.raises(ValueError):
            finite_no_dispersion(g, s, [1.0], source=5)


# =============================================================================
# Tests for the Lightcone
# =============================================================================


class TestLightcone:
    """Tests for lightcone_profile."""

    def test_time_zero(self, ladder) -> None:
        """At t = 0 only the origin offset is occupied."""
        g, s = ladder
        assert lightcone_profile(g, s, 0.0, 0.5) == 0

    def test_single_vertex(self, point) -> None:
        """Point graph at t = 10: R is the last order with |J_R(20)| >= 1e-10."""
        g, s = point
        radius = lightcone_profile(g, s, 10.0, 1e-10)
        values = np.abs(special.jv(np.arange(0, 120), 20.0))
        assert radius == int(np.nonzero(values >= 1e-10)[0][-1])
        assert 20 < radius <= lightcone_limit(10.0)

    @pytest.mark.parametrize("t", [1.0, 10.0, 50.0, 200.0])
    def test_within_ballistic_envelope(self, ladder, t: float) -> None:
        """R <= 2t + 10 t^(1/3) + 20 for epsilon = 1e-10."""
        g, s = ladder
        report = lightcone_report(g, s, t)
        assert report.passed
        assert report.radius <= lightcone_limit(t)

    def test_radius_is_sharp(self, point) -> None:
        """Entries just inside R reach epsilon, entries beyond do not."""
        g, s = point
        t, eps = 7.0, 1e-8
        radius = lightcone_profile(g, s, t, eps)
        assert abs(special.jv(radius, 2 * t)) >= eps
        assert all(abs(special.jv(nu, 2 * t)) < eps for nu in range(radius + 1, radius + 30))

    def test_invalid_input(self, ladder) -> None:
        """Negative time or non-positive epsilon are rejected."""
        g, s = ladder
        with pytest.raises(ValueError):
            lightcone_profile(g, s, -1.0, 1e-10)
        with pytest.raises(ValueError):
            lightcone_profile(g, s, 1.0, 0.0)
