# coding:utf-8

"""Main entry point module for the ire CLI application.

This module provides the command-line interface: argument parsing, the run
configuration, signal handling and one handler per subcommand.

Key Functions:
- parse_arguments(): Configure and parse command-line arguments
- signal_handler(): Handle graceful shutdown on interruption signals
- run(): Execute one command and return its exit code
- main(): Console entry point, registers the signal handlers and exits

Subcommands:
- analyze: Combinatorial report on a scheme and its dual
- dual: The dual scheme, or the dual extension when real data is given
- induct: Apply induction steps (--step, repeated) or a positive run (--run)
- class: Enumerate a Rauzy class (--max-size, --kinds, --forward-only, --dot)
- glue: Glue an IRE into a branched tree (--dual for the dual side)
- surface: Build the zippered surface of a natural extension (--svg, --pdf, --check)
- verify: Run the invariant suite, on an input or on the built-in populations
- example: Print the built-in worked extension

Inputs are file paths, inline JSON documents, scheme literals such as
"(a.b b.b a.e b.e)" or two-row literals such as "[a b / b a]".

Exit Codes:
- 0: Success
- 1: Parse or validation error, failed verification, or interruption
- 2: Two competing lengths are equal, so the requested step is undefined
"""

import argparse
import json
import signal
import sys
from typing import Dict, List, Optional

import numpy as np

from ire import __version__
from ire.analysis import analyze
from ire.config import (
    BRANCH_RULES,
    DEFAULT_MAX_CLASS_SIZE,
    DEFAULT_MAX_DEGREE,
    DEFAULT_SAMPLES,
    DEFAULT_WORKERS,
    RunConfig,
)
from ire.converters import (
    Document,
    class_document,
    dumps,
    extension_document,
    floating_document,
    ire_document,
    lengths_document,
    load_document,
    parse_assignments,
    parse_rational,
    parse_step,
    report_document,
    save_document,
    save_net,
    scheme_document,
    surface_document,
    tree_document,
)
from ire.converters.text import parse_ext_label
from ire.errors import InternalInvariantViolation, IREError, TieDetected
from ire.example import WORKED_DUAL_BRANCH_COORDINATES, worked_extension, worked_surface
from ire.extension import (
    NaturalExtension,
    apply_step_extension,
    apply_step_floating,
    is_positive_extension,
    make_extension,
    make_floating_extension,
)
from ire.gluing import glue_ire
from ire.induction import (
    STEP_KINDS,
    InductionStep,
    apply_positive_step,
    apply_step,
    apply_step_lengths,
    apply_step_scheme,
    run_induction,
)
from ire.logging_config import close_logging, log_message, setup_logging
from ire.rauzy import rauzy_class
from ire.realdata import as_endpoints, as_lengths, lengths_from_endpoints
from ire.scheme import dual
from ire.state import force_exit, is_shutdown_requested, request_shutdown
from ire.surface import build_surface, first_return_check
from ire.utils import timing_context
from ire.verify import input_task, run_verification


def signal_handler(signum, frame):
    """Handle interrupt signals for graceful shutdown"""
    if is_shutdown_requested():  # If CTRL+C is pressed twice
        log_message(None, "WARNING", "\nForce quitting...", quiet=False, summary=False)
        force_exit()
        sys.exit(1)

    request_shutdown()
    log_message(
        None,
        "WARNING",
        "\nShutdown requested. Waiting for current tasks to complete...",
        quiet=False,
        summary=False,
    )


def _step_argument(text: str) -> InductionStep:
    try:
        return parse_step(text)
    except IREError as e:
        raise argparse.ArgumentTypeError(str(e))


def _coordinates_argument(text: str) -> list:
    try:
        return [parse_rational(item) for item in text.replace(",", " ").split()]
    except IREError as e:
        raise argparse.ArgumentTypeError(str(e))


def _kinds_argument(text: str) -> tuple:
    kinds = tuple(item.strip() for item in text.split(",") if item.strip())
    unknown = [kind for kind in kinds if kind not in STEP_KINDS]
    if unknown or not kinds:
        raise argparse.ArgumentTypeError(
            f"unknown step kind(s) {', '.join(unknown) or '(none)'}, use {', '.join(STEP_KINDS)}"
        )
    return kinds


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json",
        action="store_true",
        dest="json_output",
        help="Print machine-readable JSON instead of text",
    )
    common.add_argument(
        "--quiet",
        action="store_true",
        help="Run silently, showing errors only",
    )
    common.add_argument(
        "--summary",
        action="store_true",
        help="Display only warnings, errors and final summaries",
    )
    common.add_argument(
        "--logfile",
        help="Path to log file (optional)",
        default=None,
    )
    common.add_argument(
        "--workers",
        type=int,
        default=DEFAULT_WORKERS,
        help=f"Number of parallel workers for verification (default: {DEFAULT_WORKERS})",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help="Seed for random choices (default: fresh entropy)",
    )
    common.add_argument(
        "--samples",
        type=int,
        default=DEFAULT_SAMPLES,
        help=f"Samples per flow in first-return checks (default: {DEFAULT_SAMPLES})",
    )
    common.add_argument(
        "--branch-rule",
        choices=BRANCH_RULES,
        default=BRANCH_RULES[0],
        help="Where glued trees branch inside the chosen segment (default: midpoint)",
    )
    common.add_argument(
        "--branch-coordinates",
        type=_coordinates_argument,
        default=[],
        help="Explicit branch coordinates for the primal tree, e.g. '15/2,11'",
    )
    common.add_argument(
        "--dual-branch-coordinates",
        type=_coordinates_argument,
        default=[],
        help="Explicit branch coordinates for the dual tree",
    )
    return common


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Configure and parse command line arguments"""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="ire",
        description=f"ire v{__version__} - Interval rearrangement ensembles: schemes, "
        "induction, Rauzy classes and zippered surfaces.",
    )
    parser.add_argument("--version", action="version", version=f"ire {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    analyze_parser = commands.add_parser(
        "analyze", parents=[common], help="Report cycles, turns, twists and genus"
    )
    analyze_parser.add_argument("input", help="Scheme literal, document or file")

    dual_parser = commands.add_parser("dual", parents=[common], help="Print the dual")
    dual_parser.add_argument("input", help="Scheme literal, document or file")

    induct_parser = commands.add_parser(
        "induct", parents=[common], help="Apply induction steps to a scheme or its real data"
    )
    induct_parser.add_argument("input", help="Scheme literal, document or file")
    induct_parser.add_argument(
        "--step",
        action="append",
        type=_step_argument,
        default=[],
        help="Step such as rb:d,a; repeat to apply several in order",
    )
    induct_parser.add_argument(
        "--run",
        type=int,
        default=0,
        help="Then apply this many positivity-preserving steps (random with --seed)",
    )
    induct_parser.add_argument(
        "--right-only", action="store_true", help="Restrict --run to rb and re steps"
    )
    induct_parser.add_argument(
        "--endpoints", help="Endpoints for a scheme literal, e.g. 'a.b=0 a.e=1 ...'"
    )
    induct_parser.add_argument("--lengths", help="Lengths for a scheme literal, e.g. 'a=2 b=3'")

    class_parser = commands.add_parser(
        "class", parents=[common], help="Enumerate the Rauzy class of a scheme"
    )
    class_parser.add_argument("input", help="Scheme literal, document or file")
    class_parser.add_argument(
        "--max-size",
        type=int,
        default=DEFAULT_MAX_CLASS_SIZE,
        help=f"Stop after this many schemes (default: {DEFAULT_MAX_CLASS_SIZE})",
    )
    class_parser.add_argument(
        "--kinds",
        type=_kinds_argument,
        default=STEP_KINDS,
        help="Comma-separated step kinds to follow (default: rb,re,lb,le)",
    )
    class_parser.add_argument(
        "--forward-only", action="store_true", help="Do not follow inverse steps"
    )
    class_parser.add_argument("--dot", action="store_true", help="Print the class as DOT")

    glue_parser = commands.add_parser(
        "glue", parents=[common], help="Glue a positive IRE into a branched tree"
    )
    glue_parser.add_argument("input", help="IRE or extension document, or a scheme literal")
    glue_parser.add_argument(
        "--dual", action="store_true", help="Glue the dual side of an extension"
    )
    glue_parser.add_argument(
        "--endpoints", help="Endpoints for a scheme literal, e.g. 'a.b=0 a.e=1 ...'"
    )
    glue_parser.add_argument("-o", "--output", help="Also save the tree document here")

    surface_parser = commands.add_parser(
        "surface", parents=[common], help="Build the zippered surface of an extension"
    )
    surface_parser.add_argument("input", help="Extension document or file")
    surface_parser.add_argument("--svg", help="Draw the rectangle net to this SVG file")
    surface_parser.add_argument("--pdf", help="Draw the rectangle net to this PDF file")
    surface_parser.add_argument(
        "--check", action="store_true", help="Compare first returns with the tree maps"
    )
    surface_parser.add_argument("-o", "--output", help="Also save the surface document here")

    verify_parser = commands.add_parser(
        "verify", parents=[common], help="Run the invariant suite"
    )
    verify_parser.add_argument(
        "input", nargs="?", help="Check only this input (default: built-in populations)"
    )
    verify_parser.add_argument(
        "--random-cases",
        type=int,
        default=None,
        help="Random cases per population (default: 10000 step conjugacies, "
        "1000 scheme identities and oracle cases, 200 real-map cases, "
        "100 extension runs and surfaces)",
    )
    verify_parser.add_argument(
        "--max-degree",
        type=int,
        default=DEFAULT_MAX_DEGREE,
        help=f"Largest alphabet checked exhaustively (default: {DEFAULT_MAX_DEGREE})",
    )

    commands.add_parser("example", parents=[common], help="Print the built-in worked extension")
    return parser.parse_args(argv)


def _build_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        quiet=args.quiet,
        summary=args.summary,
        log_path=args.logfile,
        json_output=args.json_output,
        workers=args.workers,
        seed=args.seed,
        samples=args.samples,
        max_size=getattr(args, "max_size", DEFAULT_MAX_CLASS_SIZE),
        random_cases=getattr(args, "random_cases", None),
        max_degree=getattr(args, "max_degree", DEFAULT_MAX_DEGREE),
        branch_rule=args.branch_rule,
        branch_coordinates=args.branch_coordinates,
        dual_branch_coordinates=args.dual_branch_coordinates,
        results_on_stdout=args.command != "verify",
    )


def _load_input(args: argparse.Namespace) -> Document:
    """Load the input and attach --endpoints or --lengths to it."""
    document = load_document(args.input)
    s = document.scheme
    if getattr(args, "endpoints", None):
        raw = parse_assignments(args.endpoints)
        document.x = as_endpoints(s, {parse_ext_label(key): value for key, value in raw.items()})
        if document.kind == "scheme":
            document.kind = "ire"
    if getattr(args, "lengths", None):
        document.v = as_lengths(s, parse_assignments(args.lengths))
        if document.kind == "scheme":
            document.kind = "lengths"
    return document


def _extension(document: Document) -> NaturalExtension:
    if document.x is None or document.y is None:
        raise ValueError("this command needs an extension document with endpoints x and y")
    return make_extension(document.scheme, document.x, document.y)


def _describe(document: Dict) -> List[str]:
    lines = [f"Scheme: {document['scheme']}"]
    for key in ("x", "y", "v", "w"):
        if key in document:
            values = " ".join(f"{name}={value}" for name, value in document[key].items())
            lines.append(f"{key}: {values}")
    return lines


def _emit(document: Dict, config: RunConfig, lines: Optional[List[str]] = None) -> None:
    if config.json_output:
        print(dumps(document), end="")
    else:
        print("\n".join(lines if lines is not None else _describe(document)))


def _cmd_analyze(args, config: RunConfig, logger) -> int:
    report = analyze(_load_input(args).scheme)
    _emit(report_document(report), config, report.lines())
    return 0


def _cmd_dual(args, config: RunConfig, logger) -> int:
    document = _load_input(args)
    s = document.scheme
    if document.x is not None and document.y is not None:
        e = _extension(document)
        _emit(extension_document(make_extension(dual(s), e.y, e.x)), config)
    elif document.v is not None and document.w is not None:
        f = make_floating_extension(s, document.v, document.w)
        _emit(floating_document(make_floating_extension(dual(s), f.w, f.v)), config)
    else:
        _emit(scheme_document(dual(s)), config)
    return 0


def _check_positive_step(s, v, step: InductionStep) -> None:
    """On positive data, only steps that keep every length positive are allowed."""
    if all(value > 0 for value in v.values()):
        apply_positive_step(s, v, step)


def _induct_once(document: Document, step: InductionStep) -> Document:
    s = document.scheme
    if document.x is not None and document.y is not None:
        e = _extension(document)
        if is_positive_extension(e):
            apply_positive_step(s, e.v, step)
        e = apply_step_extension(e, step)
        return Document("extension", e.scheme, x=e.x, y=e.y)
    if document.x is not None:
        _check_positive_step(s, lengths_from_endpoints(s, document.x), step)
        s_prime, x_prime = apply_step(s, document.x, step)
        return Document("ire", s_prime, x=x_prime)
    if document.v is not None and document.w is not None:
        f = make_floating_extension(s, document.v, document.w)
        _check_positive_step(s, f.v, step)
        f = apply_step_floating(f, step)
        return Document("floating", f.scheme, v=f.v, w=f.w)
    if document.v is not None:
        v = as_lengths(s, document.v)
        _check_positive_step(s, v, step)
        s_prime, v_prime = apply_step_lengths(s, v, step)
        return Document("lengths", s_prime, v=v_prime)
    return Document("scheme", apply_step_scheme(s, step))


def _output_document(document: Document) -> Dict:
    if document.kind == "extension":
        return extension_document(make_extension(document.scheme, document.x, document.y))
    if document.kind == "ire":
        return ire_document(document.scheme, document.x)
    if document.kind == "floating":
        return floating_document(make_floating_extension(document.scheme, document.v, document.w))
    if document.kind == "lengths":
        return lengths_document(document.scheme, document.v)
    return scheme_document(document.scheme)


def _cmd_induct(args, config: RunConfig, logger) -> int:
    document = _load_input(args)
    for step in args.step:
        document = _induct_once(document, step)
        log_message(
            logger,
            "INFO",
            f"{step}: {document.scheme}",
            quiet=config.info_quiet,
            summary=config.summary,
        )

    if args.run:
        s = document.scheme
        if document.x is not None:
            v = lengths_from_endpoints(s, document.x)
        elif document.v is not None:
            v = document.v
        else:
            raise ValueError("--run needs lengths or endpoints to choose positive steps")
        rng = np.random.default_rng(config.seed) if config.seed is not None else None
        trajectory = run_induction(s, v, args.run, rng=rng, right_only=args.right_only)
        for step in trajectory.steps:
            document = _induct_once(document, step)
            log_message(
                logger,
                "INFO",
                f"{step}: {document.scheme}",
                quiet=config.info_quiet,
                summary=config.summary,
            )
        if trajectory.stopped:
            log_message(
                logger,
                "WARNING",
                f"Run stopped after {len(trajectory.steps)} steps: {trajectory.stopped}",
                quiet=config.quiet,
                summary=config.summary,
            )

    _emit(_output_document(document), config)
    return 0


def _cmd_class(args, config: RunConfig, logger) -> int:
    seed = _load_input(args).scheme
    rc = rauzy_class(
        seed,
        config.max_size,
        kinds=args.kinds,
        include_inverse=not args.forward_only,
        progress=not (config.quiet or config.summary),
    )
    if rc.truncated:
        log_message(
            logger,
            "WARNING",
            f"Class enumeration stopped at {len(rc.schemes)} schemes; "
            "the class may be larger (see --max-size)",
            quiet=config.quiet,
            summary=config.summary,
        )

    if args.dot:
        print(rc.to_dot(), end="")
    else:
        summary = rc.summary()
        lines = [
            f"Seed: {summary['seed']}",
            f"Schemes: {summary['schemes']}",
            f"Edges: {summary['edges']} (self-loops: {summary['self_loops']})",
            f"Strongly connected: {'yes' if summary['strongly_connected'] else 'no'}",
        ]
        lines.extend(f"  {text}" for text in rc.texts())
        _emit(class_document(rc), config, lines)
    return 1 if rc.truncated and is_shutdown_requested() else 0


def _cmd_glue(args, config: RunConfig, logger) -> int:
    document = _load_input(args)
    if args.dual:
        s, x, side = dual(document.scheme), document.y, "dual"
    else:
        s, x, side = document.scheme, document.x, "primal"
    if x is None:
        raise ValueError(f"glue needs {side} endpoints: pass an IRE or extension document")
    tree = glue_ire(s, x, config.get_branch_rule(dual=args.dual), side=side)
    output = tree_document(tree)
    if args.output:
        save_document(output, args.output)
        log_message(
            logger,
            "INFO",
            f"Saved tree to {args.output}",
            quiet=config.info_quiet,
            summary=config.summary,
        )

    lines = [f"Scheme: {s}"]
    lines.extend(
        f"[{p['from'][0]}, {p['from'][1]}]: {p['begin']} glued to {p['end']}"
        for p in output["pairings"]
    )
    lines.extend(
        f"Branch point at {point['coordinate']}: {' '.join(point['meeting'])}"
        for point in output["branch_points"]
    )
    _emit(output, config, lines)
    return 0


def _cmd_surface(args, config: RunConfig, logger) -> int:
    e = _extension(_load_input(args))
    surface = build_surface(e, config.get_branch_rule(), config.get_branch_rule(dual=True))
    code = 0

    if args.check:
        report = first_return_check(surface, config.samples)
        log_message(
            logger,
            "INFO" if report.ok else "ERROR",
            f"First returns: {report.passed} agree, {report.failed} disagree, "
            f"{report.skipped} skipped",
            quiet=config.info_quiet if report.ok else config.quiet,
            summary=config.summary,
        )
        for failure in report.failures[:5]:
            log_message(logger, "ERROR", f"  {failure}", quiet=config.quiet)
        code = 0 if report.ok else 1

    for path, extension in ((args.svg, ".svg"), (args.pdf, ".pdf")):
        if not path:
            continue
        if not path.lower().endswith(extension):
            raise ValueError(f"{path} does not end in {extension}")
        elapsed = save_net(surface, path)
        log_message(
            logger,
            "INFO",
            f"Saved net to {path} in {elapsed:.2f} seconds",
            quiet=config.info_quiet,
            summary=config.summary,
        )

    output = surface_document(surface)
    if args.output:
        save_document(output, args.output)
    _emit(output, config, _surface_lines(surface))
    return code


def _surface_lines(surface) -> List[str]:
    summary = surface.summary()
    lines = [
        f"Scheme: {surface.extension.scheme}",
        f"Genus: {summary['genus']}",
        f"Euler characteristic: {summary['euler_characteristic']} "
        f"(V={summary['vertices']}, E={summary['edges']}, F={summary['faces']})",
    ]
    if not surface.cone_points:
        lines.append("Cone points: none")
    for point in surface.cone_points:
        label, X, Y = point.corners[0]
        lines.append(f"Cone point of angle {point.angle_pi}*pi at {label} ({X}, {Y})")
    return lines


def _cmd_verify(args, config: RunConfig, logger) -> int:
    tasks = None
    if args.input:
        document = _load_input(args)
        tasks = [input_task(document.scheme, document.x, document.y, config)]
    completed, failed = run_verification(config, logger, tasks)
    if config.json_output:
        print(json.dumps({"batches": completed, "failed": failed}, indent=2))
    if is_shutdown_requested():
        return 1
    return 1 if failed else 0


def _cmd_example(args, config: RunConfig, logger) -> int:
    e = worked_extension()
    output = extension_document(e)
    lines = _describe(output)
    coordinates = ",".join(str(c) for c in WORKED_DUAL_BRANCH_COORDINATES)
    lines.append(f"Dual branch coordinates: {coordinates}")
    lines.extend(_surface_lines(worked_surface())[1:])
    _emit(output, config, lines)
    return 0


COMMANDS = {
    "analyze": _cmd_analyze,
    "dual": _cmd_dual,
    "induct": _cmd_induct,
    "class": _cmd_class,
    "glue": _cmd_glue,
    "surface": _cmd_surface,
    "verify": _cmd_verify,
    "example": _cmd_example,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    logger = None
    config = RunConfig()
    try:
        try:
            args = parse_arguments(argv)
        except SystemExit as e:
            # argparse uses 2 for usage errors; 2 is reserved for ties
            return 1 if e.code else 0
        config = _build_config(args)
        logger = setup_logging(config.log_path, config.quiet)
        config.validate(logger)
        if config.json_output:
            config.quiet = True

        log_message(
            logger,
            "INFO",
            f"IRE v{__version__}",
            quiet=config.quiet or config.results_on_stdout,
            summary=config.summary,
        )
        with timing_context(args.command, logger, log_timing=True, quiet=config.info_quiet):
            return COMMANDS[args.command](args, config, logger)

    except TieDetected as e:
        log_message(logger, "ERROR", f"Error: {e}", quiet=False, summary=config.summary)
        return 2
    except (IREError, ValueError, OSError) as e:
        log_message(logger, "ERROR", f"Error: {e}", quiet=False, summary=config.summary)
        return 1
    except InternalInvariantViolation as e:
        log_message(logger, "ERROR", f"Internal error: {e}", quiet=False, summary=config.summary)
        return 1
    except KeyboardInterrupt:
        if not is_shutdown_requested():
            print("\nOperation cancelled by user")
        return 1
    finally:
        if logger:
            close_logging(logger)


def main():
    """Main entry point for the ire CLI."""
    signal.signal(signal.SIGINT, signal_handler)
    signal.signal(signal.SIGTERM, signal_handler)
    sys.exit(run())


if __name__ == "__main__":
    main()
