"""Command-line front end.

Verb-noun subcommands over the library: order and term comparison, the
collapse value, sequence embedding, barrier pair listings, and the
descending-window transform pipeline.  Exit codes: 0 on success, 1 on
domain errors (printed as `error: <Name>: <message>`), 2 on usage errors.

Grammars accepted on the command line:

    order spec   fin:<k> | omega | omega+(<spec>)
    element      w.<n> | y.<element> | <n>
    term         element (height 0) | [t1,t2,...] (height n, entries of
                 height n-1)
    node         comma-separated naturals: 1,3,7
    quasi order  base(<spec>) | term(<spec>,<height>) | prod(<k>,<q>) |
                 seq(<q>)
    sequence     [e1;e2;...] with entries in the quasi order's value form
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from . import randgen
from .barriers import format_pair, iter_triangle_pairs
from .base_orders import compare_base, parse_elem, parse_spec
from .errors import InvalidTerm, ParseError, WqoError
from .quasiorders import (
    Product,
    TermOrder,
    format_array_table,
    higman_leq,
    parse_quasiorder,
)
from .terms import c_value, format_term, lex_compare, parse_term, validate_term
from .transform import (
    canonical_descent,
    format_report_json,
    format_report_structured,
    format_report_text,
    parse_sequence_file,
    run_pipeline,
)


SPEC_GRAMMAR = "spec := fin:<k> | omega | omega+(<spec>)"
ELEM_GRAMMAR = ("element := w.<n> | y.<element> | <n>   "
                "(bare <n> is sugar for w.<n>)")
TERM_GRAMMAR = ("term := <element> at height 0; "
                "[t1,t2,...] of height-(n-1) terms at height n; [] is least")
QO_GRAMMAR = ("order := base(<spec>) | term(<spec>,<height>) | "
              "prod(<k>,<order>) | seq(<order>)")
SEQ_GRAMMAR = "sequence := [e1;e2;...] with entries in the order's value form"
PAIR_FORM = "pair-per-line form: <s>,|<t> with nodes as comma-separated naturals"
FILE_FORMAT = "file := header line 'spec=<spec> height=<n>', then one term per line"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wqo",
        description="orders, sequence embedding, barrier arrays, and the "
                    "descending-window transform",
    )
    sub = parser.add_subparsers(dest="noun", required=True)

    order = sub.add_parser("order", help="base order operations")
    order_sub = order.add_subparsers(dest="verb", required=True)
    oc = order_sub.add_parser("compare", help="compare two elements",
                              epilog=f"{SPEC_GRAMMAR}\n{ELEM_GRAMMAR}",
                              formatter_class=argparse.RawDescriptionHelpFormatter)
    oc.add_argument("--spec", required=True, help="order spec, e.g. omega+(fin:2)")
    oc.add_argument("a", help="element, e.g. w.5 or y.w.0")
    oc.add_argument("b")
    oc.set_defaults(fn=_cmd_order_compare)

    cnf = sub.add_parser("cnf", help="term order operations")
    cnf_sub = cnf.add_subparsers(dest="verb", required=True)
    term_epilog = f"{SPEC_GRAMMAR}\n{ELEM_GRAMMAR}\n{TERM_GRAMMAR}"
    cc = cnf_sub.add_parser("compare", help="compare two terms",
                            epilog=term_epilog,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    cc.add_argument("--spec", required=True)
    cc.add_argument("--height", type=int, required=True)
    cc.add_argument("t1", help="term, e.g. [2,1]")
    cc.add_argument("t2")
    cc.set_defaults(fn=_cmd_cnf_compare)
    cv = cnf_sub.add_parser("c", help="collapse value of two terms",
                            epilog=term_epilog,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    cv.add_argument("--spec", required=True)
    cv.add_argument("--height", type=int, required=True)
    cv.add_argument("t1")
    cv.add_argument("t2")
    cv.set_defaults(fn=_cmd_cnf_c)
    cr = cnf_sub.add_parser("random", help="print random valid terms",
                            epilog=term_epilog,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    cr.add_argument("--spec", required=True)
    cr.add_argument("--height", type=int, required=True)
    cr.add_argument("--count", type=int, default=1)
    cr.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    cr.set_defaults(fn=_cmd_cnf_random)

    hig = sub.add_parser("higman", help="sequence embedding")
    hig_sub = hig.add_subparsers(dest="verb", required=True)
    he = hig_sub.add_parser("embed", help="does seq1 embed into seq2?",
                            epilog=f"{QO_GRAMMAR}\n{SEQ_GRAMMAR}",
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    he.add_argument("--q", required=True, help="quasi order, e.g. base(omega)")
    he.add_argument("seq1", help="sequence, e.g. [1;2]")
    he.add_argument("seq2")
    he.set_defaults(fn=_cmd_higman_embed)

    bar = sub.add_parser("barrier", help="barrier node operations")
    bar_sub = bar.add_subparsers(dest="verb", required=True)
    bp = bar_sub.add_parser("pairs", help="list all related pairs in a window",
                            epilog=PAIR_FORM)
    bp.add_argument("--k", type=int, required=True)
    bp.add_argument("--window", type=int, required=True)
    bp.set_defaults(fn=_cmd_barrier_pairs)

    tr = sub.add_parser("transform", help="descending-window transform")
    tr_sub = tr.add_subparsers(dest="verb", required=True)
    trr = tr_sub.add_parser("run", help="generate a canonical descent and run",
                            epilog=term_epilog,
                            formatter_class=argparse.RawDescriptionHelpFormatter)
    trr.add_argument("--spec", required=True)
    trr.add_argument("--height", type=int, required=True)
    trr.add_argument("--start", required=True, help="nonzero start term")
    trr.add_argument("--fuel", type=int, default=2)
    trr.add_argument("--steps", type=int, required=True,
                     help="window length to generate (truncates the descent)")
    _add_report_flags(trr)
    trr.set_defaults(fn=_cmd_transform_run)
    trv = tr_sub.add_parser("verify", help="run the pipeline on a sequence file",
                            epilog=FILE_FORMAT)
    trv.add_argument("--input", required=True, help="sequence file path")
    _add_report_flags(trv)
    trv.set_defaults(fn=_cmd_transform_verify)

    return parser


def _add_report_flags(p):
    p.add_argument("--report", default=None, metavar="PATH",
                   help="write the report to PATH instead of stdout")
    p.add_argument("--format", dest="fmt", choices=["text", "structured", "json"],
                   default=None,
                   help="report format (default: json when --report ends in "
                        ".json, text otherwise)")
    p.add_argument("--tables", default=None, metavar="DIR",
                   help="also dump every level table to DIR/level<k>.txt")
    p.add_argument("--jobs", type=int, default=1,
                   help="partition the goodness scans; results are "
                        "independent of this value")


def _cmd_order_compare(args):
    spec = parse_spec(args.spec)
    a = parse_elem(args.a)
    b = parse_elem(args.b)
    print(compare_base(spec, a, b).name)


def _parse_checked_term(text, spec, height):
    t = parse_term(text, height)
    v = validate_term(spec, t)
    if v is not None:
        raise InvalidTerm(v)
    return t


def _cmd_cnf_compare(args):
    spec = parse_spec(args.spec)
    t1 = _parse_checked_term(args.t1, spec, args.height)
    t2 = _parse_checked_term(args.t2, spec, args.height)
    print(lex_compare(t1, t2).name)


def _cmd_cnf_c(args):
    spec = parse_spec(args.spec)
    t1 = _parse_checked_term(args.t1, spec, args.height)
    t2 = _parse_checked_term(args.t2, spec, args.height)
    print(format_term(c_value(spec, t1, t2)))


def _cmd_cnf_random(args):
    spec = parse_spec(args.spec)
    rng = random.Random(args.seed)
    for _ in range(args.count):
        print(format_term(randgen.random_term(spec, args.height, rng)))


def _cmd_higman_embed(args):
    q = parse_quasiorder(args.q)
    seq_order = parse_quasiorder(f"seq({args.q})")
    s, pos = seq_order.parse_value(args.seq1)
    _require_consumed(args.seq1, pos)
    t, pos = seq_order.parse_value(args.seq2)
    _require_consumed(args.seq2, pos)
    for item in (*s, *t):
        q.check(item)
    print("true" if higman_leq(q, s, t) else "false")


def _require_consumed(text, pos):
    if pos != len(text):
        raise ParseError(f"trailing input: {text[pos:]!r}", col=pos + 1)


def _cmd_barrier_pairs(args):
    if args.k < 1:
        raise WqoError(f"--k must be >= 1, got {args.k}")
    for s, t in iter_triangle_pairs(args.k, args.window):
        print(format_pair(s, t))


def _emit_report(args, report):
    fmt = args.fmt
    if fmt is None:
        fmt = "json" if (args.report or "").endswith(".json") else "text"
    text = {
        "text": format_report_text,
        "structured": format_report_structured,
        "json": format_report_json,
    }[fmt](report)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_tables(args, ds):
    from .transform import build_levels

    os.makedirs(args.tables, exist_ok=True)
    for level in build_levels(ds):
        q = Product(level.level, TermOrder(level.spec, level.term_height))
        path = os.path.join(args.tables, f"level{level.level}.txt")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(format_array_table(q, level.table))


def _run_and_emit(args, ds, source):
    if args.jobs < 1:
        raise WqoError(f"--jobs must be >= 1, got {args.jobs}")
    report = run_pipeline(ds, source=source, jobs=args.jobs)
    _emit_report(args, report)
    if args.tables:
        _dump_tables(args, ds)


def _cmd_transform_run(args):
    spec = parse_spec(args.spec)
    start = _parse_checked_term(args.start, spec, args.height)
    if args.fuel < 1:
        raise WqoError(f"--fuel must be >= 1, got {args.fuel}")
    if args.steps < 1:
        raise WqoError(f"--steps must be >= 1, got {args.steps}")
    ds = canonical_descent(spec, args.height, start, args.fuel, args.steps)
    source = (f"canonical(start={format_term(start)},fuel={args.fuel},"
              f"steps={args.steps})")
    _run_and_emit(args, ds, source)


def _cmd_transform_verify(args):
    with open(args.input, "r", encoding="utf-8") as fh:
        ds = parse_sequence_file(fh.read())
    _run_and_emit(args, ds, f"file({args.input})")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.fn(args)
    except WqoError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: FileNotFound: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
