#!/usr/bin/env python
"""
CLI entry point for the Matchstick Graphs toolkit.
"""

import argparse
import json
import logging
import sys

from matchstick_graphs import __version__
from matchstick_graphs.config import DEFAULT_TOLERANCES
from matchstick_graphs.construct import Embedding, builtin_graph54, execute, parse_script
from matchstick_graphs.errors import (
    ConstructionError,
    EmbeddingFormatError,
    GeometryError,
    GraphCheckError,
    RenderError,
    ScriptError,
    SolveError,
)
from matchstick_graphs.graphcheck import verify
from matchstick_graphs.render import RenderOptions, render_svg
from matchstick_graphs.solve import solve_param, sweep, sweep_to_csv
from matchstick_graphs.utils import (
    UsageError,
    check_param_names,
    parse_param_overrides,
    read_input,
    write_output,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CONSTRUCTION = 3


def load_construction(args):
    """Pick the construction named by a script path or --builtin."""
    script = getattr(args, "script", None)
    builtin = getattr(args, "builtin", False)
    if builtin and script:
        raise UsageError("give either a script path or --builtin, not both")
    if builtin:
        return builtin_graph54()
    if not script:
        raise UsageError("a script path or --builtin is required")
    return parse_script(read_input(script))


def resolve_params(args, construction):
    """Parameter overrides from --param, plus the solved value with --at-solved."""
    overrides = parse_param_overrides(getattr(args, "param", None))
    check_param_names(overrides, construction)
    if getattr(args, "at_solved", False):
        result = solve_param(construction.with_defaults(overrides))
        if result.param_name in overrides:
            raise UsageError(f"--at-solved conflicts with --param {result.param_name}")
        overrides[result.param_name] = result.value
        logger.info("Using solved %s = %.12f", result.param_name, result.value)
    return overrides


def load_embedding(args):
    """Embedding from --embedding FILE, or by executing the selected construction."""
    path = getattr(args, "embedding", None)
    if path:
        if getattr(args, "script", None) or getattr(args, "builtin", False):
            raise UsageError("--embedding cannot be combined with a script or --builtin")
        if getattr(args, "param", None) or getattr(args, "at_solved", False):
            raise UsageError("--embedding cannot be combined with --param or --at-solved")
        return Embedding.from_json(read_input(path))
    construction = load_construction(args)
    return execute(construction, resolve_params(args, construction))


def build_command(args):
    """Execute a construction and write its embedding as JSON."""
    embedding = load_embedding(args)
    write_output(embedding.to_json(), args.output)
    return EXIT_OK


def solve_command(args):
    """Solve the free parameter so the closing edge has its target length."""
    construction = load_construction(args)
    overrides = parse_param_overrides(args.param)
    check_param_names(overrides, construction)
    if overrides:
        construction = construction.with_defaults(overrides)
    tolerances = DEFAULT_TOLERANCES.replace(residual=args.tol)
    result = solve_param(construction, bracket=args.bracket, tolerances=tolerances)

    if args.json:
        write_output(json.dumps(result.to_dict(), indent=2), args.output)
    else:
        print(f"{result.param_name} = {result.value:.12f}")
        if args.output:
            write_output(json.dumps(result.to_dict(), indent=2), args.output)
    return EXIT_OK


def verify_command(args):
    """Verify an embedding and report; exit 0 only if it passes."""
    embedding = load_embedding(args)
    tolerances = DEFAULT_TOLERANCES.replace(
        unit_length=args.tol, clearance_floor=args.clearance_floor
    )
    report = verify(embedding, tolerances)
    write_output(report.to_json(), args.output)
    if not report.passed:
        print("Verification failed", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def sweep_command(args):
    """Sample the closing length and clearance over a parameter range."""
    construction = load_construction(args)
    overrides = parse_param_overrides(args.param)
    check_param_names(overrides, construction)
    construction = construction.with_defaults(overrides)
    directive = construction.solve_directive
    if args.range:
        lo, hi = args.range
    elif directive is not None:
        lo, hi = directive.lo, directive.hi
    else:
        raise UsageError("no --range given and the script has no solve directive")
    samples = sweep(construction, lo, hi, args.steps, workers=args.workers)
    param = directive.parameter if directive is not None else construction.free_parameters[0]
    write_output(sweep_to_csv(samples, param), args.output)
    return EXIT_OK


def render_command(args):
    """Draw an embedding as SVG."""
    embedding = load_embedding(args)
    options = RenderOptions(
        scale=args.scale,
        show_labels=args.labels,
        closing_color=args.closing_color,
        title=args.title,
    )
    write_output(render_svg(embedding, options), args.output)
    return EXIT_OK


def _add_source_arguments(parser, embedding=False):
    parser.add_argument("script", nargs="?", help="Path to a .msc construction script")
    parser.add_argument("--builtin", action="store_true", help="Use the bundled 54-vertex construction")
    if embedding:
        parser.add_argument("--embedding", metavar="FILE", help="Read an embedding JSON file produced by build")
    parser.add_argument("--param", action="append", metavar="NAME=VALUE",
                        help="Override a parameter (degrees); may be repeated")
    parser.add_argument("-o", "--output", metavar="FILE", help="Write output to FILE instead of stdout")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="matchstick-graphs",
        description="Matchstick Graphs - build, solve and verify unit-distance constructions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress to stderr")
    subparsers = parser.add_subparsers(dest="command", help="Command to run")

    # Build command
    build_parser_ = subparsers.add_parser("build", help="Execute a construction and emit its embedding JSON")
    _add_source_arguments(build_parser_)
    build_parser_.add_argument("--at-solved", action="store_true", help="Solve the free parameter first")
    build_parser_.set_defaults(func=build_command)

    # Solve command
    solve_parser = subparsers.add_parser("solve", help="Solve the free angle for a unit closing edge")
    _add_source_arguments(solve_parser)
    solve_parser.add_argument("--bracket", nargs=2, type=float, metavar=("LO", "HI"),
                              help="Search bracket in degrees (default: from the script)")
    solve_parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCES.residual,
                              help="Residual tolerance in length units")
    solve_parser.add_argument("--json", action="store_true", help="Print the full result as JSON")
    solve_parser.set_defaults(func=solve_command)

    # Verify command
    verify_parser = subparsers.add_parser("verify", help="Verify the matchstick-graph properties")
    _add_source_arguments(verify_parser, embedding=True)
    verify_parser.add_argument("--at-solved", action="store_true", help="Solve the free parameter first")
    verify_parser.add_argument("--tol", type=float, default=DEFAULT_TOLERANCES.unit_length,
                               help="Unit-length tolerance")
    verify_parser.add_argument("--clearance-floor", type=float, default=DEFAULT_TOLERANCES.clearance_floor,
                               help="Smallest clearance still counted as no contact")
    verify_parser.set_defaults(func=verify_command)

    # Sweep command
    sweep_parser = subparsers.add_parser("sweep", help="Sample the closing length over a parameter range")
    _add_source_arguments(sweep_parser)
    sweep_parser.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"),
                              help="Parameter range in degrees (default: the solve bracket)")
    sweep_parser.add_argument("--steps", type=int, default=DEFAULT_TOLERANCES.sweep_steps,
                              help="Number of samples, endpoints included")
    sweep_parser.add_argument("--workers", type=int, default=None, help="Evaluate samples on N threads")
    sweep_parser.set_defaults(func=sweep_command)

    # Render command
    render_parser = subparsers.add_parser("render", help="Draw the embedding as SVG")
    _add_source_arguments(render_parser, embedding=True)
    render_parser.add_argument("--at-solved", action="store_true", help="Solve the free parameter first")
    render_parser.add_argument("--scale", type=float, default=60.0, help="Pixels per unit length")
    render_parser.add_argument("--labels", action="store_true", help="Draw vertex labels")
    render_parser.add_argument("--closing-color", default=None, help="Highlight the closing edge")
    render_parser.add_argument("--title", default=None, help="SVG title element")
    render_parser.set_defaults(func=render_command)

    return parser


def main(argv=None):
    """Main entry point for the CLI."""
    parser = build_parser()

    # argparse exits on bad arguments; report that as a usage error code.
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    # Display help if no subcommand is provided
    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        return args.func(args)
    except (UsageError, EmbeddingFormatError, OSError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScriptError, ConstructionError, SolveError, GeometryError,
            GraphCheckError, RenderError) as exc:
        print(f"Error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


if __name__ == "__main__":
    sys.exit(main())
