#!/usr/bin/env python3
"""
Main entry point for the spherical monoid engine.

One-shot queries on the weight monoids of spherical conjugacy classes:
listing classes, printing monoids, membership tests, tables, verification
runs and Smith normal forms. Exit status: 0 on success, 1 on a domain error,
2 when verification finds a mismatch.
"""

import argparse
import asyncio
import sys
from typing import List, Optional

from app.config.settings import (
    Settings, VALID_ENVIRONMENTS, VALID_EXECUTORS, VALID_FORMATS, VALID_LOG_LEVELS,
)
from app.controllers.cli_controller import CLIController, EXIT_DOMAIN_ERROR
from app.services.errors import EngineError
from app.utils.logging_config import create_service_logger, setup_logging, OperationContext


class ArgumentError(Exception):
    """Raised instead of exiting when the command line does not parse."""


class EngineArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise ArgumentError(message)


def build_parser() -> argparse.ArgumentParser:
    common = EngineArgumentParser(add_help=False)
    common.add_argument("--format", choices=VALID_FORMATS, default=argparse.SUPPRESS, help="Output format")
    common.add_argument("--log-level", choices=VALID_LOG_LEVELS, default=argparse.SUPPRESS, help="Diagnostics level")
    common.add_argument("--rank-max", type=int, default=argparse.SUPPRESS, help="Largest rank when no group is given")
    common.add_argument("--environment", choices=VALID_ENVIRONMENTS, default=argparse.SUPPRESS,
                        help="development logs are human-readable, production and staging emit JSON")

    parser = EngineArgumentParser(
        prog="spherical-monoid",
        description="Weight monoids of spherical conjugacy classes",
        parents=[common],
    )
    commands = parser.add_subparsers(dest="command", required=True, parser_class=EngineArgumentParser)

    listing = commands.add_parser("list", parents=[common], help="List groups and class labels")
    listing.add_argument("group", nargs="?", default=None)

    variant_help = "O | cover | closure | isogeny:<tag> (or label~variant)"
    show = commands.add_parser("show", parents=[common], help="Print the monoid of a class")
    show.add_argument("group")
    show.add_argument("label")
    show.add_argument("--variant", default=None, help=variant_help)

    member = commands.add_parser("member", parents=[common], help="Test membership of a weight")
    member.add_argument("group")
    member.add_argument("label")
    member.add_argument("weight", help="comma-separated fundamental-weight coordinates")
    member.add_argument("--variant", default=None, help=variant_help)

    table = commands.add_parser("table", parents=[common], help="Print the table of a group")
    table.add_argument("group")

    verify = commands.add_parser("verify", parents=[common], help="Check engine against oracle")
    verify.add_argument("--group", action="append", default=None, help="Group to verify (repeatable)")
    verify.add_argument("--max-coeff", type=int, default=None, help="Bound on coefficient sums")
    verify.add_argument("--chain-bound", type=int, default=None, help="Bound for the chain of inclusions")
    verify.add_argument("--workers", type=int, default=None)
    verify.add_argument("--executor", choices=VALID_EXECUTORS, default=None)
    verify.add_argument("--minima", action="store_true", help="Also check T^{s_alpha} connectedness")
    verify.add_argument("--structure", action="store_true", help="Also run the structural checks")
    verify.add_argument("--output", default=None, help="Write the JSON report to this file")

    snf = commands.add_parser("snf", parents=[common], help="Smith normal form of 'a,b;c,d'")
    snf.add_argument("matrix")
    return parser


async def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, configure logging and run one command."""
    try:
        args = build_parser().parse_args(argv)
        config = Settings.from_args(args)
    except (ArgumentError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DOMAIN_ERROR

    setup_logging(
        service_name=config.service.service_name,
        log_level=config.service.log_level,
        environment=config.service.environment,
    )
    logger = create_service_logger(__name__, config.service.service_name, config.service.version)
    logger.debug("Configuration loaded", extra={"config": config.to_dict()})

    controller = CLIController(config)
    try:
        with OperationContext(logger, args.command, {"format": config.output.format}):
            return await controller.dispatch(args)
    except (EngineError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    try:
        sys.exit(asyncio.run(main()))
    except KeyboardInterrupt:
        sys.stderr.write("interrupted\n")
        sys.exit(EXIT_DOMAIN_ERROR)
