import argparse
import logging
import sys
from typing import List, Optional

from app.config import settings
from app.handlers import get_commands
from app.utils.decorators import EXIT_CONFIG, EXIT_OK

logger = logging.getLogger(__name__)


def setup_logging():
    """Configure root logging on stderr; stdout stays free for data"""
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causticbeam",
        description="Near-field caustic beam synthesis and secrecy evaluation",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    for command in get_commands():
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI function"""
    setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits with 2 on bad usage, 0 for --help
        return EXIT_OK if not e.code else EXIT_CONFIG

    if not getattr(args, "handler", None):
        parser.print_help(sys.stderr)
        return EXIT_CONFIG

    logger.debug(f"Running {args.command} with {vars(args)}")
    return args.handler(args)
