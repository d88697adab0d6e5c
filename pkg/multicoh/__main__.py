"""
Command-line entry point.

Usage:
    multicoh [--config CONFIG] [--format text|json] [--verbose] [--threads N] COMMAND ...

Commands: check, rigidify, roundtrip, adjunction-demo, algebra-demo, export.
Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.
"""

import argparse
import logging
import sys
from typing import List, Optional

from multicoh import __version__
from multicoh.cli.commands import run
from multicoh.cli.error_mapper import EXIT_INVALID_INPUT, exit_code_for
from multicoh.config.loader import ConfigurationError, load_config
from multicoh.config.settings import effective_workers
from multicoh.utils.logging_setup import setup_logging


logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multicoh",
        description="Coherence checks for finite Cat-multicategories and rigidification",
    )
    parser.add_argument("--config", type=str, default=None,
                        help="Path to a JSON configuration file (default: built-in defaults)")
    parser.add_argument("--format", choices=["text", "json"], default="text",
                        help="Report format on stdout (default: text)")
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--threads", type=int, default=None,
                        help="Worker threads (replaces the config value; MULTICOH_THREADS caps it)")
    parser.add_argument("--version", action="version", version=f"multicoh {__version__}")

    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="Check every axiom of a fixture")
    check.add_argument("file")
    check.add_argument("--arity-bound", type=int, default=None,
                       help="Expected arity bound of the fixture")

    rigid = sub.add_parser("rigidify", help="Write phi(F) for a pseudo symmetric fixture")
    rigid.add_argument("file")
    rigid.add_argument("--out", required=True, help="Output fixture path")

    roundtrip = sub.add_parser("roundtrip", help="Verify eta*(phi(F)) = F or phi(eta*(G)) = G")
    roundtrip.add_argument("file")

    adjunction = sub.add_parser("adjunction-demo",
                                help="Check the 2-adjunction on a generated corpus")
    adjunction.add_argument("--seed", type=int, default=None)
    adjunction.add_argument("--corpus-size", type=int, default=None)

    algebra = sub.add_parser("algebra-demo",
                             help="Rigidify the pseudo symmetric algebras of Z/k")
    algebra.add_argument("--order", type=int, default=None, help="k (default from config)")

    export = sub.add_parser("export", help="Write the tables of a builder multicategory")
    export.add_argument("builder",
                        choices=["terminal", "assoc", "barratt_eccles", "end_of_monoid"])
    export.add_argument("--order", type=int, default=None,
                        help="Monoid order for end_of_monoid")
    export.add_argument("--out", required=True, help="Output fixture path")

    for p in (rigid, roundtrip, adjunction, algebra, export):
        p.add_argument("--arity-bound", type=int, default=None,
                       help="Arity bound N (default from config)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit code."""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except ConfigurationError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_INVALID_INPUT

    setup_logging(config.logging, verbose=args.verbose)

    logger.info("=" * 60)
    logger.info(f"multicoh v{__version__}: {args.command}")
    logger.info("=" * 60)

    try:
        workers = effective_workers(config.check.max_workers, args.threads)
        logger.debug(f"using {workers} worker thread(s)")
        return run(args, config, workers)
    except Exception as e:
        code = exit_code_for(e)
        logger.debug("command failed", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
