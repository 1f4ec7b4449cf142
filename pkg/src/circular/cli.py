"""Command-line front end.

Results go to stdout one per line; with ``--stats`` a single JSON report of
the run's counters goes to stderr.  Exit status is 0 on success, 2 on a usage
error and 1 on a runtime error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from typing import Iterable, Iterator, Sequence, TextIO

from . import memo_fib, search_tree, streams
from .lazy_core import deep_call, reset_stats, snapshot_stats

__all__ = ["build_parser", "main", "run"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0: {value}")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {value}")
    return value


def _factor_list(text: str) -> list[int]:
    try:
        factors = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None
    if any(f < 2 for f in factors):
        raise argparse.ArgumentTypeError("factors must be >= 2")
    if any(a >= b for a, b in zip(factors, factors[1:])):
        raise argparse.ArgumentTypeError("factors must be strictly increasing")
    return factors


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--stats", action="store_true", default=argparse.SUPPRESS,
                        help="print a JSON run report to stderr")

    parser = _Parser(prog="circular", parents=[common],
                     description="Circular lazy data structures: streams, memo trees, search trees.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("hamming", parents=[common], help="Hamming numbers")
    p.add_argument("--count", type=_natural, required=True)
    p.add_argument("--staged", action="store_true", help="use the duplicate-free staged program")

    p = sub.add_parser("products", parents=[common], help="products of powers of factors")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--factors", type=_factor_list, help="e.g. 2,3,5 (ascending, coprime)")
    src.add_argument("--primes", action="store_true", help="use the infinite stream of primes")
    p.add_argument("--count", type=_natural, required=True)

    p = sub.add_parser("fib", parents=[common], help="Fibonacci numbers from the memo tree")
    p.add_argument("n", type=_positive, nargs="?")
    p.add_argument("--list", type=_natural, metavar="N", dest="list_count",
                   help="first N numbers, breadth first")
    p.add_argument("--oneshot", action="store_true", help="rebuild the memo tree for this call")

    for name, what in (("perms", "permutations of 1..N"), ("queens", "N-queens boards")):
        p = sub.add_parser(name, parents=[common], help=what)
        p.add_argument("n", type=_positive)
        p.add_argument("--limit", type=_natural)
        p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("squarefree", parents=[common], help="square-free sequences over 1..N")
    p.add_argument("n", type=_positive)
    p.add_argument("--length", type=_natural, required=True)
    p.add_argument("--limit", type=_natural)
    p.add_argument("--count-only", action="store_true")
    return parser


def _format(item) -> str:
    if isinstance(item, tuple):
        return " ".join(map(str, item))
    return str(item)


def _paths(tree, k: int, limit: int | None, count_only: bool) -> Iterator:
    paths: Iterable = search_tree.iter_paths(tree, k)
    if limit is not None:
        paths = itertools.islice(paths, limit)
    if count_only:
        yield sum(1 for _ in paths)
    else:
        yield from paths


def _results(args) -> tuple[dict, Iterator]:
    cmd = args.command
    if cmd == "hamming":
        s = streams.hamming_staged() if args.staged else streams.hamming()
        return {"count": args.count, "staged": args.staged}, iter(streams.take(args.count, s))
    if cmd == "products":
        if args.primes:
            s = streams.products_inf(streams.primes())
            params = {"primes": True, "count": args.count}
        else:
            s = streams.products(args.factors)
            params = {"factors": args.factors, "count": args.count}
        return params, iter(streams.take(args.count, s))
    if cmd == "fib":
        if (args.n is None) == (args.list_count is None):
            raise UsageError("circular fib: error: give exactly one of N or --list N")
        if args.list_count is not None:
            if args.oneshot:
                raise UsageError("circular fib: error: --oneshot applies to fib N only")
            h = memo_fib.fib_handle()
            return {"list": args.list_count}, iter(streams.take(args.list_count, memo_fib.fib_stream(h)))
        value = memo_fib.fib_oneshot(args.n) if args.oneshot else memo_fib.fib_lookup(memo_fib.fib_handle(), args.n)
        return {"n": args.n, "oneshot": args.oneshot}, iter([value])
    params = {"n": args.n, "limit": args.limit, "count_only": args.count_only}
    if cmd == "perms":
        tree, k = search_tree.perm_tree(args.n), args.n
    elif cmd == "queens":
        tree, k = search_tree.queens_tree(args.n), args.n
    else:
        tree, k = search_tree.squarefree_tree(args.n), args.length
        params["length"] = args.length
    return params, _paths(tree, k, args.limit, args.count_only)


def _execute(args, stdout: TextIO) -> dict:
    reset_stats()
    start = time.perf_counter()
    params, items = _results(args)
    emitted = 0
    for item in items:
        stdout.write(_format(item) + "\n")
        emitted += 1
    elapsed = (time.perf_counter() - start) * 1000.0
    counters = snapshot_stats()
    return {
        "command": args.command,
        "params": params,
        "outputs_emitted": emitted,
        "allocations": counters.allocations,
        "forces": counters.forces,
        "nodes": counters.nodes,
        "tests": counters.tests,
        "elapsed_ms": round(elapsed, 3),
    }


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """Run one command line; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(parser.format_usage() + str(exc) + "\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        # Long lazy chains recurse deeply when first forced.
        report = deep_call(_execute, args, stdout)
    except UsageError as exc:
        stderr.write(str(exc) + "\n")
        return 2
    except Exception as exc:
        stderr.write(f"circular {args.command}: {type(exc).__name__}: {exc}\n")
        return 1
    if getattr(args, "stats", False):
        stderr.write(json.dumps(report) + "\n")
    return 0


def main() -> None:
    sys.exit(run())
