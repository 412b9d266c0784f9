"""Command-line batch runner.

    galspin run --config <path> [--format text|json] [--seed <u64>]
                [--suite <name>]... [--parallel]

Exit status: 0 when every verdict passes, 1 when any check fails, 2 for
configuration problems (unreadable file, parse error, unknown suite).
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from . import __version__
from .config import SUITE_ORDER, SuiteConfig, load_config
from .errors import ConfigError
from .report import emit_json, emit_text, exit_code
from .suites import run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galspin",
        description="verification suites for Galilean spin-statistics structure",
    )
    parser.add_argument("--version", action="version", version=f"galspin {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    runner = commands.add_parser("run", help="execute configured suites")
    runner.add_argument("--config", required=True, help="path to the config document")
    runner.add_argument(
        "--format", choices=("text", "json"), default="text", help="report format"
    )
    runner.add_argument("--seed", type=int, default=None, help="override the config seed")
    runner.add_argument(
        "--suite",
        action="append",
        default=None,
        metavar="NAME",
        help="run only this suite (repeatable; overrides the config list)",
    )
    runner.add_argument(
        "--parallel", action="store_true", help="run suites concurrently"
    )
    return parser


def _apply_overrides(config: SuiteConfig, args) -> SuiteConfig:
    updates = {}
    if args.seed is not None:
        if not 0 <= args.seed < 2**64:
            raise ConfigError("--seed must fit in an unsigned 64-bit value")
        updates["seed"] = args.seed
    if args.suite:
        for name in args.suite:
            if name not in SUITE_ORDER:
                raise ConfigError(f"unknown suite {name!r}")
        updates["suites"] = tuple(args.suite)
    if args.parallel:
        updates["parallel"] = True
    if updates:
        config = dataclasses.replace(config, **updates)
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _apply_overrides(load_config(args.config), args)
        verdicts = run(config)
    except ConfigError as exc:
        print(f"galspin: config error: {exc}", file=sys.stderr)
        return 2
    report = (
        emit_json(verdicts, config)
        if args.format == "json"
        else emit_text(verdicts, config)
    )
    sys.stdout.write(report)
    return exit_code(verdicts)


if __name__ == "__main__":
    sys.exit(main())
