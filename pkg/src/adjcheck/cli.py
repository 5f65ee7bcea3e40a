"""Command line front end: run a named battery against a context spec file
and emit the report as JSON or Markdown.

Exit codes: 0 all checks passed, 1 at least one check failed, and one
distinct code per package error so scripts can tell a bad config from a
missing dualizing object without parsing the report.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .battery import (
    BATTERIES,
    BatteryConfig,
    emit_report,
    load_context_spec,
    run_battery,
)
from .errors import (
    ConfigError,
    ExpectedIso,
    NoDualizingObjectFound,
    NotFree,
    OmegaNotIso,
    WitnessMissing,
)
from .groups import builtin_groups

EXIT_CODES = {
    "ConfigError": 2,
    "NotFree": 3,
    "NoDualizingObjectFound": 4,
    "OmegaNotIso": 5,
    "WitnessMissing": 6,
    "ExpectedIso": 7,
}

_ERRORS = (
    ConfigError,
    NotFree,
    NoDualizingObjectFound,
    OmegaNotIso,
    WitnessMissing,
    ExpectedIso,
)

log = logging.getLogger("adjcheck")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adjcheck",
        description="exact-arithmetic checks for base-change adjunction calculi",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run one battery against a context spec")
    verify.add_argument("battery", choices=BATTERIES)
    verify.add_argument(
        "--spec",
        required=True,
        help="context spec file (.toml or .json)",
    )
    verify.add_argument("--samples", type=int, default=5)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--format", choices=("json", "md"), default="json")
    verify.add_argument("--out", default=None, help="write the report here instead of stdout")

    lister = sub.add_parser("list", help="enumerate builtin names")
    lister.add_argument("what", choices=("groups", "batteries"))
    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("ADJCHECK_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _cmd_list(what: str) -> int:
    if what == "groups":
        for name, group in sorted(builtin_groups().items()):
            print(f"{name}\torder {group.order}")
    else:
        for name in BATTERIES:
            print(name)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    fmt = "markdown" if args.format == "md" else args.format
    spec = load_context_spec(args.spec)
    cfg = BatteryConfig(
        battery=args.battery,
        context_spec=spec,
        samples=args.samples,
        seed=args.seed,
        fmt=fmt,
        out=args.out,
    )
    log.info("running %s against %s", cfg.battery, args.spec)
    report = run_battery(cfg)
    text = emit_report(report, cfg.fmt, cfg.out)
    if cfg.out is None:
        print(text)
    else:
        log.info("report written to %s", cfg.out)
    if report.error is not None:
        name = report.error[0]
        log.error("%s: %s", name, report.error[1])
        return EXIT_CODES.get(name, 1)
    return 0 if report.passed else 1


def main(argv=None) -> int:
    _configure_logging()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            return _cmd_list(args.what)
        return _cmd_verify(args)
    except _ERRORS as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES[type(exc).__name__]
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CODES["ConfigError"]


if __name__ == "__main__":
    sys.exit(main())
