"""
Command-line interface

Results go to stdout (or --out) as JSON; logs go to stderr.
Exit codes: 0 success, 2 invalid input or matching failure.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from elastic_match import __version__
from elastic_match.config import settings
from elastic_match.errors import ElasticMatchError
from elastic_match.logger import setup_logger
from elastic_match.matching.grid import build_grid
from elastic_match.pipeline.examples import EXAMPLES
from elastic_match.pipeline.ingest import read_curve
from elastic_match.pipeline.runner import MatchPipeline, write_json
from elastic_match.schemas.results import GridDump, MatchReport

logger = setup_logger(__name__)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _pipeline(args) -> MatchPipeline:
    return MatchPipeline(
        engine=args.engine,
        dp_refine=args.dp_refine,
        pareto=args.pareto,
        normalize=args.normalize,
    )


def _emit(model, out: Optional[str]):
    if out:
        path = write_json(model, out)
        logger.info(f"Wrote {path}")
    else:
        sys.stdout.write(model.model_dump_json(indent=2) + "\n")


def cmd_distance(args):
    f1, f2 = read_curve(args.file1), read_curve(args.file2)
    _emit(_pipeline(args).distance(f1, f2), args.out)


def cmd_match(args):
    f1, f2 = read_curve(args.file1), read_curve(args.file2)
    pipeline = _pipeline(args)
    _emit(pipeline.match_report(pipeline.match(f1, f2)), args.out)


def cmd_geodesic(args):
    f1, f2 = read_curve(args.file1), read_curve(args.file2)
    report, _, _ = _pipeline(args).geodesic(f1, f2, steps=args.steps, mode=args.geodesic_mode)
    _emit(report, args.out)


def cmd_demo(args):
    outdir = Path(args.outdir) / args.example_id
    report = _pipeline(args).demo(args.example_id, outdir, plots=not args.no_plots)
    _emit(report, None)


def cmd_plot(args):
    from elastic_match import plotting

    try:
        report = MatchReport.model_validate_json(Path(args.match_json).read_text())
    except (OSError, ValueError) as e:
        raise ElasticMatchError(f"cannot read match file {args.match_json}: {e}") from e
    if report.grid is None:
        raise ElasticMatchError("match file has no grid; rerun `match` to produce one")
    path = plotting.plot_grid_path(report, report.grid, args.out)
    logger.info(f"Wrote {path}")


def cmd_compare_dp(args):
    pipeline = _pipeline(args)
    if args.file1 and args.file2:
        report = pipeline.compare_dp(read_curve(args.file1), read_curve(args.file2), label="input files")
    elif args.file1 or args.file2:
        raise ElasticMatchError("compare-dp takes two curve files or none")
    else:
        report = pipeline.compare_dp_standin()
    _emit(report, args.out)


def cmd_grid(args):
    f1, f2 = read_curve(args.file1), read_curve(args.file2)
    q1, q2 = _pipeline(args).prepare(f1, f2)
    _emit(GridDump.from_grid(build_grid(q1, q2)), args.out)


def build_parser() -> argparse.ArgumentParser:
    engine_opts = argparse.ArgumentParser(add_help=False)
    engine_opts.add_argument("--engine", choices=["exact", "dp"], default=settings.engine,
                             help="matching engine")
    engine_opts.add_argument("--dp-refine", type=_positive_int, default=settings.dp_refine,
                             help="lattice refinement of the DP engine")
    engine_opts.add_argument("--pareto", action="store_true", default=settings.pareto,
                             help="keep every slope state per vertex in the exact engine")
    engine_opts.add_argument("--normalize", action="store_true", default=settings.normalize,
                             help="scale both curves to unit length before matching")
    engine_opts.add_argument("--out", default=None, help="write JSON here instead of stdout")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("file1", help="first curve (.json or .csv)")
    pair.add_argument("file2", help="second curve (.json or .csv)")

    parser = argparse.ArgumentParser(
        prog="elastic-match",
        description="Exact elastic matching of piecewise-linear curves",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", parents=[pair, engine_opts], help="distances before and after alignment")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("match", parents=[pair, engine_opts], help="optimal matching with path and gammas")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("geodesic", parents=[pair, engine_opts], help="curves along the geodesic")
    p.add_argument("--steps", type=int, default=settings.geodesic_steps, help="number of curves")
    p.add_argument("--geodesic-mode", choices=["linear", "sphere"], default=settings.geodesic_mode,
                   help="straight line in L2 or great circle")
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("demo", parents=[engine_opts], help="run a closed-form example and write its files")
    p.add_argument("example_id", choices=sorted(EXAMPLES), help="example id")
    p.add_argument("--outdir", default=settings.output_dir, help="output directory")
    p.add_argument("--no-plots", action="store_true", help="skip the SVG files")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("plot", help="draw a match JSON file as an SVG")
    p.add_argument("match_json", help="file written by `match`")
    p.add_argument("out", help="SVG file to write")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("compare-dp", parents=[engine_opts],
                       help="exact against DP distance (synthetic pair when no files are given)")
    p.add_argument("file1", nargs="?", default=None)
    p.add_argument("file2", nargs="?", default=None)
    p.set_defaults(func=cmd_compare_dp)

    p = sub.add_parser("grid", parents=[pair, engine_opts], help="dump the weight grid")
    p.set_defaults(func=cmd_grid)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ElasticMatchError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2
    except KeyError as e:
        print(f"error: {e.args[0] if e.args else e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
