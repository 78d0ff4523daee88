"""Command-line surface.

Commands:
    decide --t T FILE            exit 0 = YES, 1 = NO, 2 = error
    decompose [--method self-linear|self-abstract|dp] [--verify] [--stats] FILE
    width-of --order "i1,i2,..." FILE
    gen uniform R N Q | gen cycle N | gen random R N Q [--seed S]
    verify FILE RESULTFILE

All output is deterministic text (except the ms field behind --stats).
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from .instancefmt import (
    InstanceDocument,
    ParseError,
    ResultDocument,
    build_matroid,
    document_from_matrix,
    emit_instance,
    emit_result,
    parse_instance,
    parse_result,
)
from .generators import cycle_edges, random_linear, uniform_linear
from .matroid import MatroidError
from .pathwidth import DEFAULT_GUARD, decide_pw_le, width_of_order
from .selfreduce import decompose_full

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="matroidpw", description="Exact matroid path-width tools.")
    ap.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="subset-DP size guard")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide whether pw(M) <= t")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("file")

    p = sub.add_parser("decompose", help="compute an optimal path-decomposition")
    p.add_argument("--method", choices=("self-linear", "self-abstract", "dp"), default="self-linear")
    p.add_argument("--verify", action="store_true", help="re-check the ordering before printing")
    p.add_argument("--stats", action="store_true", help="append a stats line")
    p.add_argument("file")

    p = sub.add_parser("width-of", help="evaluate the width of a given ordering")
    p.add_argument("--order", required=True, help="comma-separated 1-based element indices")
    p.add_argument("file")

    p = sub.add_parser("gen", help="emit a generated instance document")
    gsub = p.add_subparsers(dest="gen_kind", required=True)
    g = gsub.add_parser("uniform")
    g.add_argument("r", type=int)
    g.add_argument("n", type=int)
    g.add_argument("q", type=int)
    g = gsub.add_parser("cycle")
    g.add_argument("n", type=int)
    g = gsub.add_parser("random")
    g.add_argument("r", type=int)
    g.add_argument("n", type=int)
    g.add_argument("q", type=int)
    g.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="re-check a result document against its instance")
    p.add_argument("file")
    p.add_argument("resultfile")
    return ap


def _read_instance(path: str) -> InstanceDocument:
    with open(path, "r", encoding="ascii") as fh:
        return parse_instance(fh.read())


def _cmd_decide(args, out) -> int:
    m = build_matroid(_read_instance(args.file))
    if decide_pw_le(m, args.t, guard=args.guard):
        out.write("yes\n")
        return EXIT_OK
    out.write("no\n")
    return EXIT_NO


def _cmd_decompose(args, out) -> int:
    m = build_matroid(_read_instance(args.file))
    variant = {"self-linear": "linear", "self-abstract": "abstract", "dp": "dp"}[args.method]
    t0 = time.monotonic()
    dec, width, trace = decompose_full(m, variant=variant, guard=args.guard)
    ms = int((time.monotonic() - t0) * 1000)
    if args.verify:
        w2, l2 = width_of_order(m, dec.order)
        if w2 != width or l2 != dec.lambdas:
            raise MatroidError("self-check failed: recomputed width differs")  # pragma: no cover
    stats = (trace.oracle_calls, trace.rank_queries, ms) if args.stats else None
    doc = ResultDocument(width, tuple(dec.order), dec.lambdas, stats)
    out.write(emit_result(doc))
    return EXIT_OK


def _cmd_width_of(args, out) -> int:
    m = build_matroid(_read_instance(args.file))
    try:
        order = [int(tok) for tok in args.order.split(",") if tok.strip() != ""]
    except ValueError:
        raise MatroidError(f"bad --order value {args.order!r}") from None
    width, lambdas = width_of_order(m, order)
    out.write(emit_result(ResultDocument(width, tuple(order), lambdas)))
    return EXIT_OK


def _cmd_gen(args, out) -> int:
    if args.gen_kind == "uniform":
        mat = uniform_linear(args.r, args.n, args.q).matrix
        out.write(emit_instance(document_from_matrix(mat)))
    elif args.gen_kind == "cycle":
        edges = tuple(cycle_edges(args.n))
        out.write(emit_instance(InstanceDocument(kind="graph", vertices=args.n, edges=edges)))
    else:
        mat = random_linear(args.r, args.n, args.q, seed=args.seed).matrix
        out.write(emit_instance(document_from_matrix(mat)))
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    m = build_matroid(_read_instance(args.file))
    with open(args.resultfile, "r", encoding="ascii") as fh:
        res = parse_result(fh.read())
    width, lambdas = width_of_order(m, res.order)
    if width == res.width and lambdas == res.lambdas:
        out.write("ok\n")
        return EXIT_OK
    out.write(
        f"mismatch: recomputed width {width} lambda {' '.join(map(str, lambdas))}\n"
    )
    return EXIT_NO


def run_command(argv: List[str], out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return EXIT_ERROR if ex.code not in (0, None) else EXIT_OK
    try:
        if args.command == "decide":
            return _cmd_decide(args, out)
        if args.command == "decompose":
            return _cmd_decompose(args, out)
        if args.command == "width-of":
            return _cmd_width_of(args, out)
        if args.command == "gen":
            return _cmd_gen(args, out)
        if args.command == "verify":
            return _cmd_verify(args, out)
        raise MatroidError(f"unknown command {args.command!r}")  # pragma: no cover
    except (ParseError, MatroidError, ValueError, OSError) as ex:
        err.write(f"error: {ex}\n")
        return EXIT_ERROR


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
