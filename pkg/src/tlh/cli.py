"""Command line interface.

Subcommands: poincare, dim, growth-check, colorshift-check, cache-stats.
Shared flags come before the subcommand.  Exit codes: 0 success, 1 a check
found a failing instance, 2 invalid or unsupported input, 3 internal
arithmetic inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .conjectures import (
    CheckReport,
    colorshift_check,
    growth_check,
)
from .recursion import CacheError, MemoTable, load_table, save_table
from .ring import InexactDivision, StructuredRational
from .torus import (
    InfiniteDimension,
    TorusInput,
    UnsupportedInput,
    reduced_poincare,
    reduced_q1,
    total_dimension,
    unreduced_poincare,
)

CACHE_ENV = "TLH_CACHE"


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlh",
        description="Exact colored series for positive torus links.",
    )
    parser.add_argument(
        "--format", choices=("text", "json"), default="text", help="output format"
    )
    parser.add_argument(
        "--cache", metavar="PATH", help=f"memo table file (or ${CACHE_ENV})"
    )
    parser.add_argument(
        "--workers", type=positive_int, default=1, help="parallel sweep width"
    )
    parser.add_argument(
        "--raw",
        action="store_true",
        help="print values as computed, without monomial normalization",
    )
    parser.add_argument(
        "--stats", action="store_true", help="print memo statistics to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poincare", help="reduced series of T(m,n) colored (k,1,..,1)")
    p.add_argument("m", type=positive_int)
    p.add_argument("n", type=positive_int)
    p.add_argument("k", type=positive_int)
    p.add_argument(
        "--unreduced",
        action="store_true",
        help="also print the unknot factor, unexpanded",
    )
    p.add_argument(
        "--q1", action="store_true", help="collapsed series at Q = 1 (knots only)"
    )

    p = sub.add_parser("dim", help="total dimension (knots only)")
    p.add_argument("m", type=positive_int)
    p.add_argument("n", type=positive_int)
    p.add_argument("k", type=positive_int)

    p = sub.add_parser("growth-check", help="Q=1 power law across colors")
    p.add_argument("m", type=positive_int)
    p.add_argument("n", type=positive_int)
    p.add_argument("kmax", type=positive_int)

    p = sub.add_parser("colorshift-check", help="closed forms for k-colored families")
    p.add_argument("family", choices=("t2even", "t33"))
    p.add_argument("--n", type=positive_int, help="T(2,2n) parameter (t2even only)")
    p.add_argument("--kmax", type=positive_int, required=True)

    sub.add_parser("cache-stats", help="show entry count of a cache file")
    return parser


def _load_cache(path: str | None) -> tuple[MemoTable, str | None]:
    if not path:
        return MemoTable(), None
    if not os.path.exists(path):
        return MemoTable(), f"cache file {path} not found; starting fresh"
    try:
        return load_table(path), None
    except CacheError as exc:
        return MemoTable(), f"ignoring cache {path}: {exc}"


def _series_value(sr: StructuredRational, raw: bool) -> StructuredRational:
    return sr if raw or not sr else sr.normalized()


def _envelope(t: TorusInput, value, reduced: bool, dimension) -> dict:
    return {
        "m": t.m,
        "n": t.n,
        "k": t.k,
        "d": t.d,
        "reduced": reduced,
        "poincare": value,
        "dimension": None if dimension is None else str(dimension),
    }


def _cmd_poincare(args, memo: MemoTable) -> int:
    t = TorusInput(args.m, args.n, args.k)
    if args.q1:
        poly = reduced_q1(t)
        shown = poly if args.raw else poly.monomial_normalize()
        sr = StructuredRational(shown, 0, 0)
        if args.format == "json":
            env = _envelope(t, sr.to_json_dict(), True, poly.eval_at(1, 1, 1))
            env["q1"] = True
            print(json.dumps(env))
        else:
            print(shown)
        return 0
    if args.unreduced:
        ps, factor = unreduced_poincare(t, memo)
        value = _series_value(ps.value, args.raw)
        if args.format == "json":
            env = _envelope(t, value.to_json_dict(), False, None)
            env["unknot_factor"] = factor.to_json_dict()
            print(json.dumps(env))
        else:
            print(f"reduced: {value}")
            print(f"unknot-factor: {factor}")
        return 0
    ps = reduced_poincare(t, memo)
    value = _series_value(ps.value, args.raw)
    dim = None
    if t.is_knot():
        dim = int(value.num.eval_at(1, 1, 1))
    if args.format == "json":
        print(json.dumps(_envelope(t, value.to_json_dict(), True, dim)))
    else:
        print(value)
    return 0


def _cmd_dim(args, memo: MemoTable) -> int:
    t = TorusInput(args.m, args.n, args.k)
    dim = total_dimension(t, memo)
    if args.format == "json":
        print(json.dumps(_envelope(t, None, True, dim)))
    else:
        print(dim)
    return 0


def _print_report(report: CheckReport, fmt: str) -> int:
    if fmt == "json":
        print(json.dumps(report.to_json_dict()))
    else:
        print(report.claim)
        for inst in report.results:
            mark = "pass" if inst.passed else "FAIL"
            params = " ".join(f"{k}={v}" for k, v in inst.params.items())
            print(f"  {params}: {mark}")
            if inst.witness is not None:
                print(f"    witness: {inst.witness}")
        print("all passed" if report.all_passed else "FAILURES FOUND")
    return 0 if report.all_passed else 1


def _cmd_growth(args, memo: MemoTable) -> int:
    report = growth_check(args.m, args.n, args.kmax, workers=args.workers)
    return _print_report(report, args.format)


def _cmd_colorshift(args, memo: MemoTable) -> int:
    report = colorshift_check(
        args.family, args.n, args.kmax, memo, workers=args.workers
    )
    return _print_report(report, args.format)


def _cmd_cache_stats(args, memo: MemoTable) -> int:
    stats = memo.stats()
    if args.format == "json":
        print(json.dumps(stats))
    else:
        print(f"entries: {stats['entries']}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache_path = args.cache or os.environ.get(CACHE_ENV)
    memo, warning = _load_cache(cache_path)
    if warning:
        print(f"warning: {warning}", file=sys.stderr)
    try:
        if args.command == "poincare":
            code = _cmd_poincare(args, memo)
        elif args.command == "dim":
            code = _cmd_dim(args, memo)
        elif args.command == "growth-check":
            code = _cmd_growth(args, memo)
        elif args.command == "colorshift-check":
            code = _cmd_colorshift(args, memo)
        else:
            code = _cmd_cache_stats(args, memo)
    except (UnsupportedInput, InfiniteDimension, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InexactDivision as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    if cache_path and args.command != "cache-stats":
        try:
            save_table(memo, cache_path)
        except OSError as exc:
            print(f"warning: could not write cache {cache_path}: {exc}", file=sys.stderr)
    if args.stats:
        print(f"memo: {memo.stats()}", file=sys.stderr)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
