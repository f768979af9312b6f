#!/usr/bin/env python3

import argparse
import atexit
import logging
import sys
from typing import List, Optional, Sequence

from . import config
from .exceptions import BudgetExceededError, InputError, MpeGamesError
from .utils.logging import setup_logging

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_UNKNOWN = 2
EXIT_BUDGET = 3

MODES = ("p1-finite", "both-finite")


def _budget(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"budget must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mpe-games", description="Mean-payoff expression games with a finite-memory minimizer")
    parser.add_argument("--server", action="store_true", help="Start the MCP server")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="Logging level (default from LOG_LEVEL)")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", default=config.DEFAULT_EPS, help="Precision as a rational, e.g. 1/100")
    common.add_argument("--mode", choices=MODES, default="p1-finite",
                        help="both-finite treats lim-sup atoms as lim-inf")
    common.add_argument("--bnb-nodes", type=_budget, default=config.BNB_NODE_BUDGET,
                        help="Branch-and-bound node budget")
    common.add_argument("--enum-steps", type=_budget, default=config.ENUM_STEP_BUDGET,
                        help="Strategy enumeration budget")
    common.add_argument("--jobs", type=_budget, default=config.DEFAULT_JOBS, help="Worker processes")
    common.add_argument("--format", choices=("text", "json"), default="text", help="Report format")
    common.add_argument("--out", help="Output file for strategies and games")

    commands = parser.add_subparsers(dest="command")

    value = commands.add_parser("value", parents=[common], help="Interval around the finite-memory value")
    value.add_argument("game")
    value.add_argument("expression")

    decide = commands.add_parser("decide", parents=[common], help="Three-valued threshold decision")
    decide.add_argument("game")
    decide.add_argument("expression")
    decide.add_argument("--nu", required=True, help="Threshold as a rational")
    decide.add_argument("--hint", help="JSON file with a list of candidate average vectors")

    regions = commands.add_parser("regions", parents=[common], help="Per-vertex values or winning region")
    regions.add_argument("game")
    regions.add_argument("expression")
    regions.add_argument("--nu", help="Compute the winning region for this threshold instead of values")

    synth = commands.add_parser("synth", parents=[common], help="Epsilon-optimal strategy")
    synth.add_argument("game")
    synth.add_argument("expression")

    evaluate = commands.add_parser("eval", parents=[common], help="Exact value of a given strategy")
    evaluate.add_argument("game")
    evaluate.add_argument("strategy")
    evaluate.add_argument("expression")

    reduce = commands.add_parser("reduce", parents=[common], help="Game instance for a constraint system")
    reduce.add_argument("constraints")
    return parser


def _analyzer(args):
    from .expressions.parser import parse_expression
    from .graphs.loader import load_graph
    from .twoplayer.analyzer import AnalyzerSettings, GameAnalyzer
    from .utils.rationals import parse_rational

    settings = AnalyzerSettings(
        eps=parse_rational(args.eps, "--eps"),
        both_finite=args.mode == "both-finite",
        node_budget=args.bnb_nodes,
        enum_budget=args.enum_steps,
        jobs=args.jobs,
    )
    if settings.eps < 0:
        raise InputError("precision must not be negative", "--eps")
    return GameAnalyzer(load_graph(args.game), parse_expression(args.expression), settings)


def _execute(args):
    """Run one command; returns (report, exit status)."""
    from . import reports
    from .utils.files import dump_json, read_json_file, write_text_file
    from .utils.rationals import parse_rational, parse_vector

    if args.command == "reduce":
        from .graphs.loader import graph_to_document
        from .reduction import constraints_to_game, load_constraint_system, reduce_chain
        game = constraints_to_game(reduce_chain(load_constraint_system(args.constraints)))
        if args.out:
            write_text_file(args.out, dump_json(graph_to_document(game.graph)))
        return reports.reduction_report(game, args.out), EXIT_OK

    analyzer = _analyzer(args)
    mode = args.mode
    if args.command == "value":
        return reports.value_report(analyzer.value(), mode), EXIT_OK

    if args.command == "decide":
        hint = None
        if args.hint:
            hint = [parse_vector(p, f"{args.hint}[{i}]") for i, p in enumerate(read_json_file(args.hint))]
        verdict = analyzer.decide(parse_rational(args.nu, "--nu"), hint=hint)
        status = EXIT_UNKNOWN if reports.is_unknown([verdict]) else EXIT_OK
        return reports.verdict_report(verdict, mode), status

    if args.command == "regions":
        if args.nu is not None:
            region = analyzer.winning(parse_rational(args.nu, "--nu"))
            status = EXIT_UNKNOWN if reports.is_unknown(list(region.verdicts.values())) else EXIT_OK
            return reports.winning_region_report(region, mode), status
        return reports.value_region_report(analyzer.regions(), mode), EXIT_OK

    if args.command == "synth":
        from .graphs.loader import strategy_to_document
        result = analyzer.synthesize()
        if args.out:
            write_text_file(args.out, dump_json(strategy_to_document(result.strategy)))
        return reports.synthesis_report(result, mode, args.out), EXIT_OK

    if args.command == "eval":
        from .graphs.loader import load_strategy
        sigma = load_strategy(args.strategy, analyzer.graph)
        return reports.evaluation_report(analyzer.evaluate(sigma), mode), EXIT_OK

    raise InputError(f"unknown command {args.command!r}")


def _start_server():
    from .server import setup_server, stop_server
    atexit.register(stop_server)

    setup_server()

    from .server import mcp
    mcp.run()


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run a command and print its report.

    Returns:
        0 for a definite result, 1 for an input error, 2 when a decision is
        Unknown and 3 when a budget ran out
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    logger = logging.getLogger(__name__)

    if args.server:
        logger.info("MCP server starting...")
        _start_server()
        return EXIT_OK
    if args.command is None:
        parser.print_help()
        return EXIT_INPUT_ERROR

    fmt = getattr(args, "format", "text")
    try:
        report, status = _execute(args)
    except InputError as e:
        logger.error(f"Input error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except BudgetExceededError as e:
        logger.warning(f"Budget exceeded: {e}")
        print(f"budget exceeded: {e}", file=sys.stderr)
        if e.interval is not None:
            from .reports import value_report
            sys.stdout.write(value_report(e.interval, args.mode).render(fmt))
        return EXIT_BUDGET
    except MpeGamesError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ValueError, ArithmeticError) as e:
        logger.error(f"Unexpected {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    sys.stdout.write(report.render(fmt))
    logger.info(f"Command {args.command} finished with status {status}")
    return status


def main(argv: Optional[List[str]] = None):
    """Main entry point for MPE Games"""
    level = config.LOG_LEVEL
    if argv is None:
        argv = sys.argv[1:]
    if "--log-level" in argv:
        position = argv.index("--log-level")
        if position + 1 < len(argv):
            level = argv[position + 1]
    setup_logging(level)
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
