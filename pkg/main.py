"""
Main entry point for the gbs CLI
Parses arguments, reads the input graph and dispatches to the command handlers
"""

import argparse
import logging
import sys

from gbs.algebra.arithmetic import PrimeSet
from gbs.handlers.commands import COMMANDS, EXIT_INVALID, FORMATS, CliConfig, run
from gbs.utils.config import Config
from gbs.utils.errors import GbsError
from gbs.utils.helpers import error_payload, to_json
from gbs.utils.logger import setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser"""
    parser = argparse.ArgumentParser(
        prog="gbs",
        description="Residual properties of generalized Baumslag-Solitar groups given by labeled graphs",
    )
    parser.add_argument("--log-level", default=None, type=str.upper, choices=Config.LOG_LEVELS,
                        help="override GBS_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in COMMANDS:
        cmd = sub.add_parser(name)
        if name == "fuzz":
            cmd.add_argument("--seed", type=int, default=Config.FUZZ_SEED)
            cmd.add_argument("--count", type=int, default=Config.FUZZ_COUNT)
            cmd.add_argument("--json", action="store_true", help="print the full JSON report")
            continue
        cmd.add_argument("input", nargs="?", default="-", help="graph JSON file, '-' for stdin")
        cmd.add_argument("--format", choices=FORMATS[name], default="json")
        cmd.add_argument("--explain", action="store_true")
        if name == "classify":
            cmd.add_argument("--rho", default=Config.DEFAULT_RHO, help="'all' or a list like 2,3,7")
        if name == "reduce":
            cmd.add_argument("--emit-trace", action="store_true")
    return parser


def read_input(path: str) -> bytes:
    """Read the raw graph document from a file or stdin; decoding happens in parse_graph"""
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as handle:
        return handle.read()


def main(argv=None) -> int:
    """Main function"""
    args = build_parser().parse_args(argv)
    Config.validate()
    setup_logging(args.log_level)

    try:
        if args.command == "fuzz":
            config = CliConfig("fuzz", seed=args.seed, count=args.count,
                               format="json" if args.json else "text")
            text = ""
        else:
            config = CliConfig(
                args.command,
                input_path=args.input,
                rho=PrimeSet.parse(args.rho) if args.command == "classify" else None,
                format=args.format,
                explain=args.explain,
                emit_trace=getattr(args, "emit_trace", False),
            )
            text = read_input(args.input)
    except GbsError as e:
        logger.error(f"Invalid arguments: {e}")
        print(to_json(error_payload(e.code, e.detail)))
        return EXIT_INVALID
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        print(to_json(error_payload("MalformedInput", str(e))))
        return EXIT_INVALID

    code, output = run(config, text)
    sys.stdout.write(output if output.endswith("\n") else output + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
