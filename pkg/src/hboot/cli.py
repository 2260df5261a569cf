"""Command line entry point: ``hboot {ci,normalize,coverage,chart}``.

Exit status is 0 on success, 1 for invalid input or arguments, 2 for I/O
failures and 3 for an infeasible (method, level, B) combination.  Output is
written to a temporary file and renamed, so a failed run never leaves a
partial file behind.
"""

from __future__ import annotations

import argparse
import sys

from .errors import HbootError, ValidationError
from .intervals import IntervalMethod
from .reporting import (
    NORMALIZATIONS,
    RunConfig,
    dataset_to_csv,
    dataset_to_json,
    fixture_path,
    load_dataset,
    render_interval_chart,
    run_ci_command,
    run_coverage_command,
    run_normalize_command,
    write_atomic,
)
from .resampling import StatisticKind

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_INFEASIBLE = 0, 1, 2, 3

_FIXTURE_KIND = {"hcr": ("h_values", "norms"), "profiles": ("citation_profiles", "profile_norms")}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _levels(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid level list {text!r}") from None


def _methods(text: str) -> tuple[IntervalMethod, ...]:
    try:
        return tuple(IntervalMethod.parse(x.strip()) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _stats(text: str) -> tuple[StatisticKind, ...]:
    if text == "both":
        return (StatisticKind.MEAN, StatisticKind.MEDIAN)
    return (StatisticKind(text),)


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hboot", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    shared = _Parser(add_help=False)
    src = shared.add_argument_group("input")
    src.add_argument("--input", help="dataset file (.csv or .json)")
    src.add_argument("--fixture", choices=sorted(_FIXTURE_KIND),
                     help="use a bundled synthetic dataset instead of --input")
    src.add_argument("--kind", choices=["h_values", "citation_profiles", "index_values"],
                     help="CSV layout of --input (default h_values)")
    src.add_argument("--norms", help="field norms CSV")
    shared.add_argument("--output", help="output path (default stdout)")
    shared.add_argument("--format", choices=["csv", "json"], default="csv")
    shared.add_argument("--seed", type=_nonneg, default=0)
    shared.add_argument("--b", type=int, default=1000, help="bootstrap replicates")
    shared.add_argument("--levels", type=_levels, default=(0.90, 0.95),
                        help="comma separated confidence levels, e.g. 0.90,0.95")
    shared.add_argument("--methods", type=_methods, default=tuple(IntervalMethod),
                        help="comma separated subset of NB,BB,PB,BCa")
    shared.add_argument("--stat", choices=["mean", "median", "both"], default="both")
    shared.add_argument("--accelerate", action="store_true",
                        help="use the jackknife acceleration in BCa")
    shared.add_argument("--no-total", dest="total", action="store_false",
                        help="omit the pooled TOTAL row")
    shared.add_argument("--threads", type=int, default=1)
    shared.add_argument("--backend", choices=["numba", "numpy"])
    norm_help = "normalise values before computing (" + ", ".join(NORMALIZATIONS) + ")"

    p = sub.add_parser("ci", parents=[shared], help="per-field bootstrap confidence intervals")
    p.add_argument("--normalization", choices=NORMALIZATIONS, help=norm_help)

    p = sub.add_parser("normalize", parents=[shared], help="write field-normalised values")
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="iglesias")

    p = sub.add_parser("coverage", parents=[shared], help="observed coverage simulation")
    p.add_argument("--normalization", choices=NORMALIZATIONS, help=norm_help)
    p.add_argument("--reps", type=int, default=2000, help="outer Monte Carlo replications")
    p.add_argument("--sample-size", type=int, help="outer sample size (default: population size)")

    p = sub.add_parser("chart", parents=[shared], help="SVG chart of one interval per field")
    p.add_argument("--normalization", choices=NORMALIZATIONS, help=norm_help)
    p.add_argument("--method", type=IntervalMethod.parse, default=IntervalMethod.BASIC)
    p.add_argument("--level", type=float, default=0.90)
    return parser


def _dataset(args):
    if (args.input is None) == (args.fixture is None):
        raise ValidationError("exactly one of --input and --fixture is required")
    if args.fixture:
        kind, norms = _FIXTURE_KIND[args.fixture]
        norms_path = args.norms or fixture_path(norms)
        return load_dataset(fixture_path(args.fixture), kind, norms_path)
    return load_dataset(args.input, args.kind or "h_values", args.norms)


def _config(args) -> RunConfig:
    stats = _stats(args.stat)
    levels = args.levels
    methods = args.methods
    if args.command == "chart":
        levels = (args.level,)
        methods = (args.method,)
        if len(stats) > 1:
            stats = (StatisticKind.MEAN,)
    return RunConfig(
        b=args.b, seed=args.seed, levels=levels, methods=methods, statistics=stats,
        accelerate=args.accelerate, include_total=args.total,
        normalization=args.normalization or "iglesias",
        outer_reps=getattr(args, "reps", 2000), sample_size=getattr(args, "sample_size", None),
        threads=args.threads, backend=args.backend,
    )


def _render(args, config, ds) -> str:
    if args.command == "normalize":
        out = run_normalize_command(ds, config)
        return dataset_to_json(out) if args.format == "json" else dataset_to_csv(out)
    if args.normalization:
        ds = run_normalize_command(ds, config)
    if args.command == "coverage":
        run = run_coverage_command(ds, config)
    else:
        run = run_ci_command(ds, config)
        if args.command == "chart":
            return render_interval_chart(run, args.method, args.level, config.statistics[0])
    return run.to_json() if args.format == "json" else run.to_csv()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        config.check_feasible()
        text = _render(args, config, _dataset(args))
        if args.output:
            write_atomic(args.output, text)
        else:
            sys.stdout.write(text)
    except HbootError as exc:
        print(f"hboot: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except UnicodeDecodeError as exc:
        print(f"hboot: error: input is not UTF-8 ({exc.reason})", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"hboot: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
