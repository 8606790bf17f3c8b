"""Command-line interface.

Exit codes:

    0  success / property holds / code found
    1  property fails (verify), nothing exists (search ExhaustedNone),
       singleton check fails (shrink --chain)
    2  operational error (bad flags, unreadable input, violated precondition)
    3  search inconclusive within budget
"""

from __future__ import annotations

import argparse
import sys

from . import bound, codes, search, shrink
from .algebra import GF, read_matrix, write_matrix
from .codes import LinearCode
from .rbc import RbcParams, verify_rbc

EXIT_OK, EXIT_PROPERTY_FAILS, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    code = LinearCode(read_matrix(args.code))
    report = verify_rbc(code, RbcParams(args.r, args.m, args.d), args.strategy, workers=args.threads)
    _emit(report.to_json(include_witnesses=args.witnesses) + "\n", args.output)
    return EXIT_OK if report.holds else EXIT_PROPERTY_FAILS


def cmd_bound(args) -> int:
    _emit(bound.theorem_bound(args.k, args.r, args.d).render(), args.output)
    return EXIT_OK


def cmd_construct(args) -> int:
    F = GF(args.q)
    if args.kind == "repetition":
        code = codes.construct_repetition(F, args.k, args.d)
    elif args.kind == "mds":
        code = codes.construct_mds(F, args.k, args.d)
    else:
        if args.lam is None:
            raise ValueError("--lambda is required for blockrs")
        code = codes.construct_block_rs(F, args.k, args.d, args.lam)
    write_matrix(code.G, args.output)
    return EXIT_OK


def cmd_shrink(args) -> int:
    code = LinearCode(read_matrix(args.code))
    params = RbcParams(args.r, args.r, args.d)
    if args.chain:
        trace = shrink.shrink_chain(code, params, verify_each=args.verify_each)
        sys.stdout.write(trace.render())
        if args.output:
            write_matrix(trace.final.G, args.output)
        return EXIT_OK if trace.singleton_check in (True, None) else EXIT_PROPERTY_FAILS
    reduced, step = shrink.shrink_once(code, params)
    sys.stdout.write(step.render(0) + "\n")
    if step.degenerate:
        sys.stdout.write("degenerate: message length dropped below r\n")
    if args.output:
        write_matrix(reduced.G, args.output)
    return EXIT_OK


def cmd_search(args) -> int:
    F = GF(args.q)
    cache = search.SearchCache(args.cache) if args.cache else None
    out = search.exists_rbc(F, args.k, args.n, RbcParams(args.r, args.m, args.d), args.mode,
                            seed=args.seed, samples=args.samples, workers=args.threads, cache=cache)
    _emit(out.render(), args.output)
    return {
        search.Status.FOUND: EXIT_OK,
        search.Status.EXHAUSTED_NONE: EXIT_PROPERTY_FAILS,
        search.Status.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    }[out.status]


def cmd_figure(args) -> int:
    d_list = [int(t) for t in args.d_list.split(",") if t.strip()]
    _emit(bound.figure_csv(bound.figure_table(args.k, d_list)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rbclab", description="Robust batch code laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check the (r, m, d) property of a generator matrix")
    p.add_argument("--code", required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--strategy", choices=["naive", "lemma1"], default="naive")
    p.add_argument("--witnesses", action="store_true", help="include the (I, D) -> J map")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="lower bound on n for (r, r, d) codes")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("construct", help="write a reference generator matrix")
    p.add_argument("--kind", choices=["repetition", "mds", "blockrs"], required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("shrink", help="apply the shrinking reduction")
    p.add_argument("--code", required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--chain", action="store_true")
    p.add_argument("--verify-each", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_shrink)

    p = sub.add_parser("search", help="search for a code at fixed (q, k, n)")
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-r", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cache")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("figure", help="CSV of rate upper bounds, one series per d")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--d-list", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_figure)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError, ZeroDivisionError) as exc:
        print(f"rbclab {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
