"""Command-line interface: ``thermalbell {figure,sweep,threshold,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import figures, report, verification
from .collective import ModelParams
from .errors import ParameterError
from .sweep import QUANTITIES, SweepSpec, ThresholdQuery, evaluate_point, find_threshold, params_at, run_sweep

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _quantities(text):
    items = tuple(q.strip() for q in text.split(",") if q.strip())
    bad = [q for q in items if q not in QUANTITIES]
    if not items or bad:
        raise argparse.ArgumentTypeError(f"quantities must be a comma list drawn from {','.join(QUANTITIES)}")
    return items


def _add_model_flags(p, temperature_required=False):
    p.add_argument("--n", type=int, required=True, help="number of qubits")
    p.add_argument("--j", type=float, default=1.0, help="exchange coupling J")
    p.add_argument("--delta", type=float, default=1.0, help="anisotropy Delta")
    p.add_argument("--b", type=float, default=0.0, help="magnetic field B")
    p.add_argument("--t", type=float, default=None, help="temperature (needed for field sweeps)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thermalbell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    fig = sub.add_parser("figure", help="reproduce one of the five figures as CSV")
    fig.add_argument("--id", type=int, required=True, choices=range(1, 6), dest="figure_id")
    fig.add_argument("--out", required=True)
    fig.add_argument("--plot", default=None, metavar="PNG", help="also render a PNG to this path")

    sw = sub.add_parser("sweep", help="evaluate witnesses along one axis")
    _add_model_flags(sw)
    sw.add_argument("--axis", choices=("temperature", "field", "lambda_over_t"), required=True)
    sw.add_argument("--from", type=float, required=True, dest="start")
    sw.add_argument("--to", type=float, required=True, dest="stop")
    sw.add_argument("--points", type=int, required=True)
    sw.add_argument("--quantities", type=_quantities, default=QUANTITIES)
    sw.add_argument("--out", required=True)
    sw.add_argument("--plot", default=None, metavar="PNG")

    th = sub.add_parser("threshold", help="locate where a witness stops being positive")
    _add_model_flags(th)
    th.add_argument("--quantity", choices=("M", "C", "D"), required=True)
    th.add_argument("--axis", choices=("temperature", "field", "lambda_over_t"), required=True)
    th.add_argument("--lo", type=float, required=True)
    th.add_argument("--hi", type=float, required=True)
    th.add_argument("--tol", type=float, default=1e-6)
    th.add_argument("--floor", type=float, default=0.0,
                    help="treat values at or below this as zero (default 0)")
    th.add_argument("--out", default=None)

    ver = sub.add_parser("verify", help="run the cross-validation suites")
    ver.add_argument("--max-n", type=int, default=8)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--draws", type=int, default=10, help="random draws per N")
    return parser


def _base_params(args) -> ModelParams:
    beta = 1.0 if args.t is None else 1.0 / args.t
    if args.axis == "field" and args.t is None:
        raise UsageError("--t is required when sweeping the field")
    if args.t is not None and not args.t > 0:
        raise UsageError("--t must be positive")
    return ModelParams(args.n, args.j, args.delta, args.b, beta)


def _cmd_figure(args):
    preset, rows = figures.run_figure(args.figure_id)
    report.emit_csv(rows, args.out)
    if args.plot:
        report.render_png(rows, args.plot, preset.plotted, f"Figure {preset.figure_id}: {preset.title}")
    return EXIT_OK


def _cmd_sweep(args):
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    grid = np.linspace(args.start, args.stop, args.points) if args.points > 1 else np.array([args.start])
    spec = SweepSpec(args.axis, tuple(grid), _base_params(args), args.quantities)
    label = f"N={args.n}"
    rows = [(args.axis, v, label, r) for v, r in run_sweep(spec)]
    report.emit_csv(rows, args.out, args.quantities)
    if args.plot:
        plotted = tuple(q for q in args.quantities if q != "chsh_max") or args.quantities
        report.render_png(rows, args.plot, plotted)
    return EXIT_OK


def _cmd_threshold(args):
    base = _base_params(args)
    query = ThresholdQuery(args.quantity, args.axis, (args.lo, args.hi), base, args.tol, args.floor)
    result = find_threshold(query)
    if result.found:
        print(f"{result.value:.6f}")
    else:
        print(f"no crossing: {result.reason}")
    if args.out:
        rows = []
        if result.found:
            rows.append((args.axis, result.value, f"{args.quantity}-threshold",
                         evaluate_point(params_at(base, args.axis, result.value))))
        report.emit_csv(rows, args.out)
    return EXIT_OK


def _cmd_verify(args):
    if not 2 <= args.max_n <= 12:
        raise UsageError("--max-n must be between 2 and 12")
    if args.draws < 1:
        raise UsageError("--draws must be at least 1")
    results = verification.run_all(max_n=args.max_n, seed=args.seed, draws=args.draws)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("all suites passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {"figure": _cmd_figure, "sweep": _cmd_sweep, "threshold": _cmd_threshold, "verify": _cmd_verify}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.subcommand](args)
    except (UsageError, ParameterError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
