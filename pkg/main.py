from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from cli import admin, public
from cli.common import emit_error
from core import db
from core.config import settings
from core.errors import CapExceededError, ConfigError, ForestSpechtError
from core.logs import configure_logging

EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_USAGE = 2  # argparse


def build_parser() -> argparse.ArgumentParser:
    # options accepted by every subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="extra dotenv file with settings")
    common.add_argument("--pretty", action="store_true", help="human-readable tables instead of JSON")
    common.add_argument("--log-level", help="overrides LOG_LEVEL")
    common.add_argument("--specht-max-n", type=int, help="overrides SPECHT_MAX_N")
    common.add_argument("--tensor-max-words", type=int, help="overrides TENSOR_MAX_WORDS")
    common.add_argument("--ehrhart-max-n", type=int, help="overrides EHRHART_MAX_N")
    common.add_argument("--primes", help="overrides PRIMES, e.g. 2147483647,2147483629")

    parser = argparse.ArgumentParser(
        prog="forest-specht",
        description="Forest matching polytopes, Specht modules and forest tableaux",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    public.register(subparsers, common)
    admin.register(subparsers, common)
    return parser


def apply_settings(args: argparse.Namespace) -> None:
    if args.config:
        settings.reload(args.config)
        db.rebind(settings.DB_URL)
    overrides = {
        "SPECHT_MAX_N": args.specht_max_n,
        "TENSOR_MAX_WORDS": args.tensor_max_words,
        "EHRHART_MAX_N": args.ehrhart_max_n,
    }
    for name, value in overrides.items():
        if value is not None:
            setattr(settings, name, value)
    if args.primes:
        try:
            settings.PRIMES = tuple(int(p) for p in args.primes.split(","))
        except ValueError as e:
            raise ConfigError(f"--primes must be comma-separated integers, got {args.primes!r}") from e
    settings.validate()
    configure_logging(args.log_level or settings.LOG_LEVEL)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 on --help
        return int(e.code or 0)

    try:
        apply_settings(args)
        if args.command in ("check", "check-runs"):
            db.init_db()
        args.handler(args)
    except admin.CheckFailed as e:
        emit_error(str(e), **e.details)
        return EXIT_DOMAIN_ERROR
    except CapExceededError as e:
        emit_error(str(e), cap=e.cap_name, limit=e.limit, requested=e.requested)
        return EXIT_DOMAIN_ERROR
    except ForestSpechtError as e:
        emit_error(str(e), kind=type(e).__name__)
        return EXIT_DOMAIN_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
