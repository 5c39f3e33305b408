"""girthguard - domination-number lower bounds for girth-constrained graphs."""

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from girthguard.bounds import evaluate_all
from girthguard.config import (
    BB_MAX_N_ENV_VAR,
    BRUTE_MAX_N_ENV_VAR,
    CORPUS_SOLVER_METHODS,
    EXIT_INPUT_FORMAT,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION,
    SOLVER_METHODS,
    get_jobs,
)
from girthguard.corpus import (
    CorpusInput,
    CorpusOptions,
    CorpusRunner,
    report_to_json,
    search_sharp,
    write_report,
)
from girthguard.generators import (
    CAGE_NAMES,
    build_from_spec,
    parse_generator_spec,
)
from girthguard.graph import GraphFormatError, emit_edge_list, girth, read_graph
from girthguard.partition import (
    SmallerSetCertificate,
    build_partition,
    format_moves,
    format_partition,
    validate_partition,
)
from girthguard.settings import load_runtime_configuration
from girthguard.solver import gamma_exact, solve_gamma
from girthguard.utils import PreconditionError, VerificationError, format_error_message

# Configure logging; stdout is reserved for command output
logging.basicConfig(
    level=logging.INFO,
    format="%(message)s",
    handlers=[logging.StreamHandler(sys.stderr)],
)

logger = logging.getLogger(__name__)

GEN_KINDS = ("cycle", "path", "star", "cage", "random-girth", "random", "subdivide")


class CompactHelpFormatter(argparse.RawDescriptionHelpFormatter):
    """Help formatter without metavar duplication in option listing."""

    def _format_action_invocation(self, action):
        if not action.option_strings:
            return super()._format_action_invocation(action)
        # Display short flags first for consistent column width
        option_strings = sorted(action.option_strings, key=len)
        return ", ".join(option_strings)


class UsageExitParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors with exit code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"Error: {message}\n")


def _add_graph_file(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", metavar="FILE", help="Graph in edge-list format")


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments.

    Returns:
        Parsed arguments namespace.
    """
    parser = UsageExitParser(
        prog="girthguard",
        formatter_class=CompactHelpFormatter,
        description=(
            "Exact domination numbers, girth-based lower bounds and partition "
            "certificates for girth-constrained graphs."
        ),
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Show debug logging"
    )
    parser.add_argument(
        "--quiet", "-q", action="store_true", help="Only log warnings and errors"
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    cmd = commands.add_parser(
        "girth", help="Print the girth", formatter_class=CompactHelpFormatter
    )
    _add_graph_file(cmd)

    cmd = commands.add_parser(
        "gamma",
        help="Print the domination number and a minimum dominating set",
        formatter_class=CompactHelpFormatter,
    )
    _add_graph_file(cmd)
    cmd.add_argument("--method", choices=SOLVER_METHODS, default="auto")

    cmd = commands.add_parser(
        "bounds", help="Print the bound report as JSON", formatter_class=CompactHelpFormatter
    )
    _add_graph_file(cmd)
    gamma_source = cmd.add_mutually_exclusive_group()
    gamma_source.add_argument(
        "--gamma-exact",
        action="store_true",
        help="Solve the domination number and compare every bound against it",
    )
    gamma_source.add_argument(
        "--gamma", type=int, metavar="N", help="Known domination number"
    )

    cmd = commands.add_parser(
        "partition",
        help="Print the partition built around a minimum dominating set",
        formatter_class=CompactHelpFormatter,
    )
    _add_graph_file(cmd)
    cmd.add_argument(
        "--dominating-set",
        metavar="IDS",
        help='Comma-separated dominating set (e.g. "0,3,5"); solved when omitted',
    )

    cmd = commands.add_parser(
        "gen", help="Write a generated graph", formatter_class=CompactHelpFormatter
    )
    cmd.add_argument("kind", choices=GEN_KINDS)
    cmd.add_argument("--n", type=int, help="Vertex count (target for random-girth)")
    cmd.add_argument("--k", type=int, help="Star leaves, or subdivision count")
    cmd.add_argument("--name", help=f"Cage name: {', '.join(CAGE_NAMES)}")
    cmd.add_argument("--girth", type=int, help="Girth for random-girth")
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--density", type=float, help="Extra-edge probability for random")
    cmd.add_argument("--input", metavar="FILE", help="Graph to subdivide")
    cmd.add_argument("--times", type=int, help="Interior vertices per subdivided edge")
    cmd.add_argument("-o", "--output", metavar="FILE", help="Write to FILE")

    cmd = commands.add_parser(
        "verify",
        help="Run the verification pipeline over files and generator specs",
        formatter_class=CompactHelpFormatter,
    )
    cmd.add_argument("files", nargs="*", metavar="FILES")
    cmd.add_argument(
        "--spec",
        action="append",
        metavar="SPECSTRING",
        help='Generator spec such as "random-girth:n=30,girth=7,seed=42"; repeatable',
    )
    cmd.add_argument("--out", metavar="FILE", help="Write the JSON report to FILE")
    cmd.add_argument("--csv", metavar="FILE", help="Write the CSV projection to FILE")
    cmd.add_argument("--no-partition", action="store_true")
    cmd.add_argument("--solve", choices=CORPUS_SOLVER_METHODS, default="auto")
    cmd.add_argument("--jobs", type=int, help="Worker processes")
    cmd.add_argument(
        "--no-timing",
        action="store_true",
        help="Omit timestamp and wall times so reports compare byte for byte",
    )
    cmd.add_argument("--brute-max-n", type=int, help="Brute-force threshold for auto")
    cmd.add_argument("--bb-max-n", type=int, help="Branch-and-bound threshold for auto")

    cmd = commands.add_parser(
        "sharp",
        help="Search for graphs where a bound is tight",
        formatter_class=CompactHelpFormatter,
    )
    cmd.add_argument("--girth", type=int, required=True)
    cmd.add_argument("--max-n", type=int, required=True)
    cmd.add_argument("--max-m", type=int)
    cmd.add_argument("--seed", type=int)
    cmd.add_argument("--batch", type=int, help="Random graphs to sample")

    return parser.parse_args(argv)


def parse_vertex_list(text: str) -> list[int]:
    """Parse ``"a,b,c"`` into vertex ids."""
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise PreconditionError(f"invalid vertex list '{text}'") from None


def cmd_girth(args: argparse.Namespace) -> int:
    print(girth(read_graph(args.file)))
    return EXIT_OK


def cmd_gamma(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    certificate = solve_gamma(g, args.method)
    print(certificate.size)
    print(" ".join(str(v) for v in certificate.members))
    return EXIT_OK


def cmd_bounds(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    gamma = args.gamma
    if args.gamma_exact:
        gamma = solve_gamma(g).size
    report = evaluate_all(g, gamma)
    print(report.model_dump_json(indent=2))
    return EXIT_VERIFICATION if report.invalid_bounds() else EXIT_OK


def cmd_partition(args: argparse.Namespace) -> int:
    g = read_graph(args.file)
    if args.dominating_set is not None:
        members = parse_vertex_list(args.dominating_set)
    else:
        members = list(gamma_exact(g).members)

    outcome = build_partition(g, members)
    if isinstance(outcome, SmallerSetCertificate):
        smaller = ",".join(str(v) for v in outcome.certificate.members)
        print(f"refuted: smaller dominating set {smaller}")
        return EXIT_VERIFICATION

    print(format_partition(outcome))
    moves = format_moves(outcome)
    if moves:
        print(moves)
    violations = validate_partition(g, outcome)
    for violation in violations:
        logger.error("violation %s", violation)
    return EXIT_VERIFICATION if violations else EXIT_OK


def _gen_spec_string(args: argparse.Namespace) -> str:
    params: list[str] = []
    if args.kind == "subdivide":
        k = args.times if args.times is not None else args.k
        if k is not None:
            params.append(f"k={k}")
        if args.input:
            params.append(f"input={args.input}")
        if args.name:
            params.append(f"cage={args.name}")
    else:
        for key in ("n", "k", "name", "girth", "density"):
            value = getattr(args, key)
            if value is not None:
                params.append(f"{key}={value}")
        if args.kind in ("random-girth", "random"):
            params.append(f"seed={args.seed}")
    return f"{args.kind}:{','.join(params)}"


def cmd_gen(args: argparse.Namespace) -> int:
    spec = parse_generator_spec(_gen_spec_string(args))
    text = emit_edge_list(build_from_spec(spec))
    if args.output:
        output = Path(args.output)
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")
        logger.info("Wrote %s to %s", spec.label(), output)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.brute_max_n is not None:
        os.environ[BRUTE_MAX_N_ENV_VAR] = str(args.brute_max_n)
    if args.bb_max_n is not None:
        os.environ[BB_MAX_N_ENV_VAR] = str(args.bb_max_n)

    inputs = [CorpusInput.from_file(path) for path in args.files]
    inputs += [CorpusInput.from_spec(parse_generator_spec(s)) for s in args.spec or []]

    options = CorpusOptions(
        solve=args.solve,
        check_partition=not args.no_partition,
        include_timing=not args.no_timing,
        jobs=args.jobs if args.jobs is not None else get_jobs(),
    )
    report = CorpusRunner(options).run_corpus(inputs)

    json_path = Path(args.out) if args.out else None
    csv_path = Path(args.csv) if args.csv else None
    write_report(report, json_path, csv_path)
    if json_path is None:
        sys.stdout.write(report_to_json(report))
    return EXIT_OK if report.ok else EXIT_VERIFICATION


def cmd_sharp(args: argparse.Namespace) -> int:
    instances = search_sharp(
        args.girth, args.max_n, args.max_m, seed=args.seed, batch=args.batch
    )
    for instance in instances:
        print(
            f"{instance.graph} n={instance.n} m={instance.m} girth={instance.girth} "
            f"gamma={instance.gamma} bound={instance.bound} value={instance.value:.6f}"
        )
    logger.info("%d tight instance(s)", len(instances))
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "girth": cmd_girth,
    "gamma": cmd_gamma,
    "bounds": cmd_bounds,
    "partition": cmd_partition,
    "gen": cmd_gen,
    "verify": cmd_verify,
    "sharp": cmd_sharp,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Execute one command and return its exit code."""
    args = parse_arguments(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    elif args.quiet:
        logging.getLogger().setLevel(logging.WARNING)

    try:
        load_runtime_configuration()
    except RuntimeError as e:
        print(f"Error: {format_error_message(e)}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except (GraphFormatError, FileNotFoundError) as e:
        print(f"Error: {format_error_message(e)}", file=sys.stderr)
        return EXIT_INPUT_FORMAT
    except (PreconditionError, VerificationError) as e:
        print(f"Error: {format_error_message(e)}", file=sys.stderr)
        return EXIT_VERIFICATION
    except KeyboardInterrupt:
        print("\n\nInterrupted by user", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    """Main entry point for the girthguard CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
