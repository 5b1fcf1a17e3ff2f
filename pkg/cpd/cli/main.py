"""
cpd command line.

Subcommands run one verification each and print a report on stdout
(plain text, or JSON with --json). Logs go to stderr.

Exit codes:
    0  every check passed
    1  a bound or comparison failed
    2  usage error, including malformed graph specs
"""

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import BaseModel

from cpd.analysis import (
    DecaySeries,
    dispersion_scan,
    finite_no_dispersion,
    fit_decay_exponent,
    lightcone_report,
    log_spaced_grid,
)
from cpd.bessel import (
    LANDAU_CONSTANT,
    bessel_integral_oracle,
    bessel_j_signed,
    landau_envelope_check,
    power_series_j,
    required_nodes,
)
from cpd.config import (
    bind_context,
    clear_context,
    configure_logging,
    get_logger,
    get_settings,
)
from cpd.exceptions import (
    BoundViolationError,
    BoxTooLargeError,
    CPDError,
    DimensionMismatchError,
    GraphSpecError,
    InsufficientDataError,
    InsufficientResolutionError,
)
from cpd.graphs import FiniteGraph, build_finite_graph, hamiltonian_matrix, load_graph_spec
from cpd.kernel import I_POWERS, ProductPoint, kernel, kernel_block
from cpd.oracle import verify
from cpd.spectral import Spectrum, eigendecompose

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

BESSEL_TOLERANCE = 1e-11
# Largest |t| at which the power series still serves as a reference
SERIES_CHECK_MAX = 10.0
SERIES_CHECK_TERMS = 60

# Errors caused by the invocation rather than by the mathematics
USAGE_ERRORS = (
    GraphSpecError,
    DimensionMismatchError,
    InsufficientDataError,
    InsufficientResolutionError,
    BoxTooLargeError,
)


class UsageError(Exception):
    """Invalid combination of arguments."""


# =============================================================================
# Output
# =============================================================================


def _emit(payload: BaseModel | dict[str, Any], as_json: bool) -> None:
    data = payload.model_dump(mode="json") if isinstance(payload, BaseModel) else payload
    if as_json:
        print(json.dumps(data, indent=2))
        return
    for key, value in data.items():
        if isinstance(value, list) and len(value) > 8:
            print(f"{key}: [{len(value)} entries]")
        elif isinstance(value, dict | list):
            print(f"{key}: {json.dumps(value)}")
        else:
            print(f"{key}: {value}")


def _status(passed: bool) -> int:
    return EXIT_OK if passed else EXIT_FAILED


def _load(source: str) -> tuple[FiniteGraph, Spectrum]:
    spec, label = load_graph_spec(source)
    g = build_finite_graph(spec, name=label)
    bind_context(graph=g.name, k=g.k)
    return g, eigendecompose(hamiltonian_matrix(g))


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


# =============================================================================
# Subcommands
# =============================================================================


def cmd_bessel(args: argparse.Namespace) -> int:
    nodes = args.nodes or required_nodes(args.nu, args.t)
    value = bessel_j_signed(args.nu, args.t)
    phased = I_POWERS[args.nu % 4] * value
    reference = bessel_integral_oracle(args.nu, args.t, nodes)
    quadrature_error = abs(phased - reference)

    series: float | None = None
    series_error: float | None = None
    if abs(args.t) <= SERIES_CHECK_MAX:
        order = abs(args.nu)
        series = power_series_j(order, args.t, terms=SERIES_CHECK_TERMS)
        if args.nu < 0 and order % 2 == 1:
            series = -series
        series_error = abs(value - series)

    passed = quadrature_error < BESSEL_TOLERANCE and (
        series_error is None or series_error < BESSEL_TOLERANCE
    )
    _emit(
        {
            "nu": args.nu,
            "t": args.t,
            "value": value,
            "quadrature": _pair(reference),
            "quadrature_nodes": nodes,
            "quadrature_error": quadrature_error,
            "series": series,
            "series_error": series_error,
            "passed": passed,
        },
        args.json,
    )
    return _status(passed)


def cmd_kernel(args: argparse.Namespace) -> int:
    g, s = _load(args.graph)
    nu = args.offset if args.offset is not None else (0,) * args.d
    if len(nu) != args.d:
        raise DimensionMismatchError(
            f"--offset has {len(nu)} components, expected d = {args.d}",
            expected=args.d,
            actual=len(nu),
        )

    payload: dict[str, Any] = {"graph": g.name, "d": args.d, "t": args.t}
    if args.block:
        payload.update(kernel_block(g, s, nu, args.t).to_dict())
    else:
        x = ProductPoint(n=nu, p=args.p)
        y = ProductPoint(n=(0,) * args.d, p=args.q)
        value = kernel(g, s, x, y, args.t)
        payload.update({"nu": list(nu), "p": args.p, "q": args.q, "value": _pair(value), "abs": abs(value)})
    if args.dump_spectrum:
        payload["spectrum"] = s.to_dict()
    _emit(payload, args.json)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    g, _ = _load(args.graph)
    report = verify(g, args.d, args.t, L=args.L, seed=args.seed, method=args.method)
    _emit(report, args.json)
    return _status(report.passed)


def cmd_scan(args: argparse.Namespace) -> int:
    if args.t_min >= args.t_max:
        raise UsageError(f"--t-min ({args.t_min}) must be below --t-max ({args.t_max})")
    g, s = _load(args.graph)
    grid = log_spaced_grid(args.t_min, args.t_max, args.points)
    series = dispersion_scan(g, s, args.d, grid)
    if args.out:
        series.to_csv(args.out)
    scaled = series.scaled()
    _emit(
        {
            "graph": g.name,
            "d": args.d,
            "points": len(series),
            "t_min": series.t[0],
            "t_max": series.t[-1],
            "max_scaled": float(np.max(scaled)),
            "argmax_t": series.t[int(np.argmax(scaled))],
            "out": str(args.out) if args.out else None,
            "violations": series.violations,
            "passed": series.passed,
        },
        args.json,
    )
    return _status(series.passed)


def cmd_fit(args: argparse.Namespace) -> int:
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"series file not found: {path}")
    series = DecaySeries.from_csv(path, d=args.d)
    fit = fit_decay_exponent(series, t_min=args.t_min, source=args.source)
    _emit(fit, True)
    return EXIT_OK


def cmd_no_dispersion(args: argparse.Namespace) -> int:
    if args.t_min >= args.t_max:
        raise UsageError(f"--t-min ({args.t_min}) must be below --t-max ({args.t_max})")
    g, s = _load(args.graph)
    grid = [float(t) for t in np.linspace(args.t_min, args.t_max, args.points)]
    report = finite_no_dispersion(g, s, grid, source=args.source)
    _emit(report, args.json)
    return _status(report.passed)


def cmd_landau(args: argparse.Namespace) -> int:
    if args.t_min >= args.t_max:
        raise UsageError(f"--t-min ({args.t_min}) must be below --t-max ({args.t_max})")
    grid = log_spaced_grid(args.t_min, args.t_max, args.points)
    report = landau_envelope_check(grid, constant=args.constant)
    _emit(report, args.json)
    return _status(report.passed)


def cmd_lightcone(args: argparse.Namespace) -> int:
    g, s = _load(args.graph)
    report = lightcone_report(g, s, args.t, epsilon=args.epsilon, d=args.d)
    _emit(report, args.json)
    return _status(report.passed)


# =============================================================================
# Parser
# =============================================================================


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return number


def _positive_float(value: str) -> float:
    number = float(value)
    if not number > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return number


def _offset(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f'expected comma-separated integers "n1,...,nd", got {value!r}'
        ) from None


def _graph_options(parser: argparse.ArgumentParser, with_d: bool = True) -> None:
    parser.add_argument(
        "--graph",
        required=True,
        help="Graph spec JSON file or preset name (ladder, strip4, cylinder3, star3, ...)",
    )
    if with_d:
        parser.add_argument("--d", type=_positive_int, default=1, help="Lattice dimension")


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for all subcommands."""
    parser = argparse.ArgumentParser(
        prog="cpd",
        description="Exact propagators and dispersive decay on Z^d x G_F",
    )
    parser.add_argument("--json", action="store_true", help="Machine-readable reports")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        help="Log level (default: CPD_LOG_LEVEL or INFO)",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed for random oracle offsets")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bessel", help="J_nu(t) against its integral identity")
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--nodes", type=_positive_int, default=None)
    p.set_defaults(handler=cmd_bessel)

    p = sub.add_parser("kernel", help="Closed-form kernel entry or block")
    _graph_options(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument(
        "--offset",
        type=_offset,
        default=None,
        help='Lattice offset n - m as "n1,...,nd" (default: origin)',
    )
    p.add_argument("--p", type=int, default=0)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--block", action="store_true", help="Print the full k x k block")
    p.add_argument("--dump-spectrum", action="store_true", help="Include the spectrum of H_{G_F}")
    p.set_defaults(handler=cmd_kernel)

    p = sub.add_parser("verify", help="Kernel vs truncated lattice vs fiber quadrature")
    _graph_options(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--L", type=int, default=None, help="Box radius (default: ceil(2t) + 25)")
    p.add_argument("--method", choices=["chebyshev", "dense"], default="chebyshev")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("scan", help="Sup-norm decay over log-spaced times")
    _graph_options(p)
    p.add_argument("--t-min", type=_positive_float, default=0.1)
    p.add_argument("--t-max", type=_positive_float, default=500.0)
    p.add_argument("--points", type=_positive_int, default=200)
    p.add_argument("--out", default=None, help="CSV output path")
    p.set_defaults(handler=cmd_scan)

    p = sub.add_parser("fit", help="Fit the decay exponent of a scanned series")
    p.add_argument("--in", dest="input", required=True, help="CSV written by scan")
    p.add_argument("--t-min", type=float, default=10.0)
    p.add_argument("--source", choices=["envelope", "sup_norm"], default="envelope")
    p.add_argument("--d", type=_positive_int, default=None, help="Dimension (default: from the bound column)")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("no-dispersion", help="Pigeonhole bound on the finite graph")
    _graph_options(p, with_d=False)
    p.add_argument("--t-min", type=float, default=0.0)
    p.add_argument("--t-max", type=_positive_float, default=100.0)
    p.add_argument("--points", type=_positive_int, default=10001)
    p.add_argument("--source", type=int, default=0)
    p.set_defaults(handler=cmd_no_dispersion)

    p = sub.add_parser("landau", help="Landau envelope max_nu |J_nu(t)| t^(1/3)")
    p.add_argument("--t-min", type=_positive_float, default=0.5)
    p.add_argument("--t-max", type=_positive_float, default=1000.0)
    p.add_argument("--points", type=_positive_int, default=200)
    p.add_argument("--constant", type=_positive_float, default=LANDAU_CONSTANT)
    p.set_defaults(handler=cmd_landau)

    p = sub.add_parser("lightcone", help="Ballistic lightcone radius of the kernel")
    _graph_options(p)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--epsilon", type=_positive_float, default=1e-10)
    p.set_defaults(handler=cmd_lightcone)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """
    Parse arguments, run one subcommand and return its exit code.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    settings = get_settings()
    configure_logging(
        json_format=settings.log_json,
        log_level=args.log_level or settings.log_level,
    )
    clear_context()
    bind_context(command=args.command, d=getattr(args, "d", None))

    try:
        return int(args.handler(args))
    except (UsageError, *USAGE_ERRORS) as exc:
        field = getattr(exc, "field", None)
        where = f" (field: {field})" if field else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        logger.error("Invalid invocation", error=str(exc), field=field)
        return EXIT_USAGE
    except BoundViolationError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        logger.error("Bound violated", **exc.details)
        return EXIT_FAILED
    except CPDError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        logger.error("Numerical failure", error=exc.message, **exc.details)
        return EXIT_FAILED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        clear_context()


def main() -> None:
    """Console-script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
