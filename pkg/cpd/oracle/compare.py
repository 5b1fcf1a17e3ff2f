"""
Cross-checks of the closed-form kernel against independent computations.

1. Truncated-lattice oracle: evolve delta sources on [-L, L]^d x G_F with
   L = ceil(2t) + margin, far enough that the ballistic front never sees the
   boundary, and compare columns with the kernel.
2. Fiber quadrature: integrate exp(2 pi i theta . nu) exp(i t H(theta))(p, q)
   over the torus with the uniform trapezoid rule.
"""

import itertools
import math
from collections.abc import Sequence

import numpy as np
from pydantic import BaseModel, Field, computed_field

from cpd.config import get_logger, get_settings
from cpd.exceptions import BoundViolationError, InsufficientResolutionError
from cpd.graphs import FiniteGraph, hamiltonian_matrix
from cpd.kernel import ProductPoint, kernel_block
from cpd.spectral import (
    FiberPoint,
    Spectrum,
    eigendecompose,
    fiber_operator,
    fiber_phase,
    finite_propagator,
    spectral_exponential,
)

from .evolution import EvolutionMethod, evolve_direct, lightcone_mass
from .lattice import assemble_truncated

logger = get_logger(__name__)

# Probability mass allowed beyond the lightcone 2t + LIGHTCONE_SLACK
LIGHTCONE_SLACK = 15.0
LIGHTCONE_TOLERANCE = 1e-12
# Random offsets added to the axis offsets
RANDOM_OFFSETS = 50


class WorstEntry(BaseModel):
    """Location of the largest discrepancy."""

    nu: tuple[int, ...]
    p: int
    q: int
    closed_form: tuple[float, float]
    reference: tuple[float, float]


class ComparisonReport(BaseModel):
    """Kernel vs truncated-lattice oracle."""

    d: int
    t: float
    L: int
    method: str
    entries_checked: int
    max_error: float
    tolerance: float
    worst: WorstEntry | None = None
    lightcone_mass: float = Field(
        description="Largest mass beyond 2t + 15 over all sources"
    )

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.max_error < self.tolerance and self.lightcone_mass < LIGHTCONE_TOLERANCE


class FiberReport(BaseModel):
    """Kernel vs fiber-integral quadrature."""

    d: int
    t: float
    cases: int
    max_error: float
    tolerance: float
    worst: WorstEntry | None = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.max_error < self.tolerance


class VerificationReport(BaseModel):
    """Three-way agreement: closed form, truncated lattice, fiber quadrature."""

    graph: str | None
    d: int
    t: float
    lattice: ComparisonReport
    fiber: FiberReport

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return self.lattice.passed and self.fiber.passed


def default_radius(t: float) -> int:
    """Box radius ceil(2t) + margin."""
    return math.ceil(2.0 * abs(t)) + get_settings().lightcone_margin


def sample_offsets(
    d: int,
    t: float,
    L: int,
    seed: int | None = None,
    n_random: int = RANDOM_OFFSETS,
) -> list[tuple[int, ...]]:
    """
    Offsets compared against the oracle.

    All offsets along the first axis with |nu_1| <= min(ceil(2t) + 5, L - 10),
    plus n_random offsets drawn uniformly from the box.
    """
    reach = max(0, min(math.ceil(2.0 * abs(t)) + 5, L - 10))
    offsets = [(v,) + (0,) * (d - 1) for v in range(-reach, reach + 1)]

    rng = np.random.default_rng(get_settings().seed if seed is None else seed)
    drawn = rng.integers(-L, L + 1, size=(n_random, d))
    offsets.extend(tuple(int(c) for c in row) for row in drawn)
    # keep first occurrence, stable order
    return list(dict.fromkeys(offsets))


def _as_pair(z: complex) -> tuple[float, float]:
    return (float(z.real), float(z.imag))


def compare_kernel_vs_oracle(
    g: FiniteGraph,
    d: int,
    t: float,
    s: Spectrum | None = None,
    L: int | None = None,
    offsets: Sequence[tuple[int, ...]] | None = None,
    seed: int | None = None,
    method: EvolutionMethod = "chebyshev",
    tolerance: float | None = None,
    strict: bool = False,
) -> ComparisonReport:
    """
    Max |closed-form kernel - oracle entry| over sampled (offset, p, q).

    Every vertex q of the origin layer is used as a source; for each sampled
    offset nu and every p the kernel at (nu + v_p, 0 + v_q) is compared to
    the evolved column.

    Raises:
        BoundViolationError: If strict and the error exceeds the tolerance
    """
    settings = get_settings()
    tolerance = tolerance if tolerance is not None else settings.oracle_tolerance
    s = s if s is not None else eigendecompose(hamiltonian_matrix(g))
    L = L if L is not None else default_radius(t)

    h = assemble_truncated(g, d, L)
    box = h.box
    offsets_used = list(offsets) if offsets is not None else sample_offsets(d, t, L, seed)
    offsets_used = [nu for nu in offsets_used if all(abs(c) <= L for c in nu)]
    blocks = {nu: kernel_block(g, s, nu, t).block for nu in offsets_used}

    max_error = 0.0
    worst: WorstEntry | None = None
    max_outside = 0.0
    origin = (0,) * d
    for q in range(g.k):
        column = evolve_direct(h, box.index(ProductPoint(n=origin, p=q)), t, method)
        max_outside = max(max_outside, lightcone_mass(h, column, t, LIGHTCONE_SLACK))
        for nu in offsets_used:
            for p in range(g.k):
                closed = complex(blocks[nu][p, q])
                reference = complex(column[box.index(ProductPoint(n=nu, p=p))])
                error = abs(closed - reference)
                if error > max_error or worst is None:
                    max_error = max(max_error, error)
                    worst = WorstEntry(
                        nu=nu,
                        p=p,
                        q=q,
                        closed_form=_as_pair(closed),
                        reference=_as_pair(reference),
                    )

    report = ComparisonReport(
        d=d,
        t=float(t),
        L=L,
        method=method,
        entries_checked=len(offsets_used) * g.k * g.k,
        max_error=max_error,
        tolerance=tolerance,
        worst=worst,
        lightcone_mass=max_outside,
    )
    logger.info(
        "Compared kernel with truncated lattice",
        d=d,
        t=t,
        L=L,
        max_error=max_error,
        lightcone_mass=max_outside,
        passed=report.passed,
    )
    if strict and not report.passed:
        raise BoundViolationError(
            f"kernel differs from the oracle by {max_error:.3e} at {worst}",
            t=float(t),
            value=max_error,
            bound=tolerance,
            nu=worst.nu if worst else None,
        )
    return report


def required_fiber_nodes(nu: Sequence[int], t: float) -> int:
    """Smallest admissible nodes per axis: 2 (max|nu_j| + ceil(2t)) + 16."""
    return 2 * (max(abs(v) for v in nu) + math.ceil(2.0 * abs(t))) + 16


def kernel_via_fiber_quadrature(
    g: FiniteGraph,
    s: Spectrum,
    nu: Sequence[int],
    p: int,
    q: int,
    t: float,
    nodes: int | None = None,
    direct: bool = False,
) -> complex:
    """
    Trapezoidal value of int_{[0,1)^d} exp(2 pi i theta . nu) exp(i t H(theta))(p, q).

    Args:
        g: The finite graph
        s: Spectrum of H_{G_F}
        nu: Lattice offset n - m
        p, q: Vertex indices in G_F
        t: Time
        nodes: Nodes per axis (default: the minimal admissible count)
        direct: Exponentiate every fiber operator through its own
            eigendecomposition instead of the scalar-phase factorization

    Raises:
        InsufficientResolutionError: If nodes is below the precondition
    """
    d = len(nu)
    need = required_fiber_nodes(nu, t)
    nodes = nodes if nodes is not None else need
    if nodes < need:
        raise InsufficientResolutionError(
            f"{nodes} nodes per axis are too few for nu={tuple(nu)}, t={t}; need {need}",
            required=need,
            given=nodes,
        )

    axis = np.arange(nodes) / nodes
    thetas = np.array(list(itertools.product(axis, repeat=d)))
    waves = np.exp(2j * np.pi * (thetas @ np.asarray(nu, dtype=float)))

    if direct:
        values = np.array(
            [
                spectral_exponential(
                    fiber_operator(g, FiberPoint(theta=tuple(theta)), d), t
                )[p, q]
                for theta in thetas
            ]
        )
        return complex(np.mean(waves * values))

    entry = complex(finite_propagator(s, t).matrix[p, q])
    return complex(np.mean(waves * fiber_phase(thetas, t))) * entry


def compare_kernel_vs_fiber(
    g: FiniteGraph,
    s: Spectrum,
    d: int,
    t: float,
    offsets: Sequence[tuple[int, ...]],
    tolerance: float | None = None,
) -> FiberReport:
    """Max |kernel - fiber quadrature| over offsets and all (p, q)."""
    tolerance = tolerance if tolerance is not None else get_settings().quadrature_tolerance
    max_error = 0.0
    worst: WorstEntry | None = None
    cases = 0
    for nu in offsets:
        block = kernel_block(g, s, nu, t).block
        for p in range(g.k):
            for q in range(g.k):
                reference = kernel_via_fiber_quadrature(g, s, nu, p, q, t)
                closed = complex(block[p, q])
                error = abs(closed - reference)
                cases += 1
                if error > max_error or worst is None:
                    max_error = max(max_error, error)
                    worst = WorstEntry(
                        nu=tuple(nu),
                        p=p,
                        q=q,
                        closed_form=_as_pair(closed),
                        reference=_as_pair(reference),
                    )
    return FiberReport(
        d=d,
        t=float(t),
        cases=cases,
        max_error=max_error,
        tolerance=tolerance,
        worst=worst,
    )


def verify(
    g: FiniteGraph,
    d: int,
    t: float,
    L: int | None = None,
    seed: int | None = None,
    method: EvolutionMethod = "chebyshev",
) -> VerificationReport:
    """
    Three-way comparison of closed form, truncated lattice and fiber quadrature.

    The fiber comparison uses the axis offsets only; random offsets far out in
    the box add nothing there because quadrature has no boundary.
    """
    s = eigendecompose(hamiltonian_matrix(g))
    L = L if L is not None else default_radius(t)
    lattice = compare_kernel_vs_oracle(g, d, t, s=s, L=L, seed=seed, method=method)

    reach = math.ceil(2.0 * abs(t)) + 5
    axis_offsets = [(v,) + (0,) * (d - 1) for v in range(-reach, reach + 1)]
    if d > 1:
        axis_offsets.append((1,) * d)
    fiber = compare_kernel_vs_fiber(g, s, d, t, axis_offsets)

    report = VerificationReport(graph=g.name, d=d, t=float(t), lattice=lattice, fiber=fiber)
    logger.info(
        "Verification finished",
        graph=g.name,
        d=d,
        t=t,
        lattice_error=lattice.max_error,
        fiber_error=fiber.max_error,
        passed=report.passed,
    )
    return report
