"""``rcanon`` command line front end.

Exit status: 0 on success, 1 on a syntax error, 2 on a validation error.
Results go to standard output, diagnostics to standard error.
"""
from __future__ import annotations

import argparse
import sys
import time

from .cache import NormalFormCache
from .expr import IndexOrder
from .multiterm import NormalStats, normal, prenormal_polynomial
from .text import ParseError, ValidationError, parse_expression, parse_json, render_expression


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rcanon",
                                description="Canonicalize polynomials in the Riemann tensor.")
    p.add_argument("--mode", choices=("pre", "normal"), default="normal",
                   help="pre: monoterm symmetries only; normal: also Bianchi (default)")
    p.add_argument("--method", choices=("rebe", "direct"), default="rebe",
                   help="how Bianchi rules are computed in normal mode (default rebe)")
    p.add_argument("--free-order", metavar="a,b,c",
                   help="order of free indices; unlisted names follow by name")
    p.add_argument("--format", choices=("text", "json"), default="text", help="output format")
    p.add_argument("--cache", metavar="PATH", help="normal-form cache file")
    p.add_argument("--stats", action="store_true", help="print search statistics to stderr")
    p.add_argument("input", nargs="?", default="-", metavar="FILE|-")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    order = IndexOrder([s.strip() for s in args.free_order.split(",") if s.strip()]) \
        if args.free_order else IndexOrder()

    try:
        text = _read(args.input)
    except OSError as exc:
        print(f"rcanon: {exc}", file=stderr)
        return 2
    try:
        if text.lstrip().startswith("{"):
            poly = parse_json(text, order, allow_integer_dummies=False)
        else:
            poly = parse_expression(text, order)
    except ParseError as exc:
        print(f"rcanon: syntax error: {exc}", file=stderr)
        return 1
    except ValidationError as exc:
        print(f"rcanon: invalid expression: {exc}", file=stderr)
        return 2

    start = time.perf_counter()
    stats = NormalStats()
    if args.mode == "pre":
        result = prenormal_polynomial(poly, order, stats.pnom)
    else:
        cache = NormalFormCache(args.cache, order) if args.cache else None
        result = normal(poly, args.method, order, cache=cache, stats=stats)
    elapsed = time.perf_counter() - start

    print(render_expression(result, args.format), file=stdout)
    if args.stats:
        s = stats.pnom
        print(f"pnom runs: {s.runs}  branches J: {s.branches}  pruned: {s.pruned}  "
              f"completed: {s.completed}", file=stderr)
        if args.mode == "normal":
            print(f"rule systems: {stats.systems} ({args.method})  equations: {stats.equations}  "
                  f"cache hits: {stats.cache_hits}", file=stderr)
            for name, sec in stats.seconds.items():
                print(f"time {name}: {sec * 1000:.1f} ms", file=stderr)
        print(f"time total: {elapsed * 1000:.1f} ms", file=stderr)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
