import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from app.models.exceptions import VaporPairError
from app.routers import COMMANDS
from app.services.config_service import parse_config

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vaporpair",
        description="Heralded single photons from a hot atomic vapor: waveform, sweep and Monte Carlo tools",
    )
    parser.add_argument("--config", default=None, help="TOML run configuration (default: built-in defaults)")
    parser.add_argument("--out", default="./out", help="Output directory (default ./out)")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", action="store_true", help="Warnings and errors only")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)

    try:
        config = parse_config(args.config)
        logger.info(f"Running {args.command}, results in {args.out}")
        return args.run(args, config)
    except VaporPairError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
