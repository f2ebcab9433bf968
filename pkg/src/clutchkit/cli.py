"""Command line entry point: ``clutchkit verify|list-maps|list-checks``."""
from __future__ import annotations

import argparse
import json
import os
import sys

from .checks import REGISTRY
from .errors import UsageError
from .maps import catalogue
from .report import ALL_SUITES, SuiteConfig, emit_report, run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _jobs(text):
    if text == "auto":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {text!r}")


def build_parser():
    p = _Parser(prog="clutchkit", description="Numerical verification of clutching constructions.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a check suite")
    v.add_argument("suite", help=f"one of: {', '.join(ALL_SUITES)}")
    v.add_argument("--samples", type=int, default=10_000)
    v.add_argument("--seed", type=int, default=None, help="defaults to $CLUTCHKIT_SEED, else 42")
    v.add_argument("--tol", type=float, default=1e-9, help="shallow tolerance")
    v.add_argument("--tol-deep", type=float, default=1e-6)
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--jobs", type=_jobs, default=1, help="integer or 'auto'")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")

    sub.add_parser("list-maps", help="print the map catalogue as JSON")
    lc = sub.add_parser("list-checks", help="list registered checks")
    lc.add_argument("--format", choices=("json", "text"), default="text")
    return p


def _default_seed():
    env = os.environ.get("CLUTCHKIT_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"CLUTCHKIT_SEED must be an integer, got {env!r}")


def _write(data: bytes, out=None):
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def _verify(args):
    seed = _default_seed() if args.seed is None else args.seed
    cfg = SuiteConfig(args.suite, args.samples, seed, args.tol, args.tol_deep, args.jobs, args.format)
    report = run_suite(cfg)
    _write(emit_report(report, args.format), args.out)
    for c in report.checks:
        if c.error:
            print(f"error in {c.id}: {c.error}", file=sys.stderr)
    return 0 if report.passed else 1


def _list_checks(args):
    rows = [{"id": c.id, "suite": c.suite, "anchor": c.anchor, "tol_class": c.tol_class}
            for c in REGISTRY.values()]
    if args.format == "json":
        _write((json.dumps(rows, indent=2, ensure_ascii=False) + "\n").encode())
    else:
        _write("".join(f"{r['id']}  [{r['tol_class']}]  ({r['anchor']})\n" for r in rows).encode())
    return 0


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        if args.cmd == "verify":
            return _verify(args)
        if args.cmd == "list-maps":
            _write((json.dumps(catalogue(), indent=2, ensure_ascii=False) + "\n").encode())
            return 0
        return _list_checks(args)
    except UsageError as e:
        print(f"clutchkit: usage error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
