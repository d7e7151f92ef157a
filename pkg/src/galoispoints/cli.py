"""Command line front-end: ``gpl scenario``, ``gpl search``, ``gpl list``, ``gpl config``."""

from __future__ import annotations

import argparse
import json
import sys

from .scenarios import (
    EXIT_CONFIG,
    EXIT_IO,
    SCENARIOS,
    builtin_config,
    run_scenario,
    run_search,
)
from .errors import ConfigError


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def emit(report, fmt: str = "text", out: str | None = None) -> None:
    """Write a report as text or canonical JSON to ``out`` (stdout if None).

    Raises OSError when the destination cannot be written.
    """
    text = dumps(report.to_json()) if fmt == "json" else report.render_text()
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _emit_or_fail(report, args) -> int:
    try:
        emit(report, args.format, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return report.status


def cmd_scenario(args) -> int:
    if args.config:
        try:
            target = _load(args.config)
        except OSError as exc:
            print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
            return EXIT_IO
        except json.JSONDecodeError as exc:
            print(f"error: {args.config} is not valid JSON: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    elif args.name:
        target = args.name
    else:
        print("error: give a scenario name or --config FILE", file=sys.stderr)
        return EXIT_CONFIG
    return _emit_or_fail(run_scenario(target), args)


def cmd_search(args) -> int:
    try:
        config = _load(args.config)
    except OSError as exc:
        print(f"error: cannot read {args.config}: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"error: {args.config} is not valid JSON: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return _emit_or_fail(run_search(config), args)


def cmd_list(args) -> int:
    for name in SCENARIOS:
        print(name)
    return 0


def cmd_config(args) -> int:
    try:
        sys.stdout.write(dumps(builtin_config(args.name)))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gpl", description="Plane curves with two Galois points.")
    sub = parser.add_subparsers(dest="command", required=True)

    def output_flags(p):
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", metavar="PATH", default=None)

    p = sub.add_parser("scenario", help="run a built-in scenario or a JSON configuration")
    p.add_argument("name", nargs="?", help="built-in scenario name (see `gpl list`)")
    p.add_argument("--config", metavar="FILE")
    output_flags(p)
    p.set_defaults(func=cmd_scenario)

    p = sub.add_parser("search", help="search a finite field for criterion witnesses")
    p.add_argument("--config", metavar="FILE", required=True)
    output_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("list", help="list built-in scenarios")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("config", help="print the JSON configuration of a built-in scenario")
    p.add_argument("name")
    p.set_defaults(func=cmd_config)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
