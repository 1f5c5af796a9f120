#!/usr/bin/env python3
"""Sweep the padded-entry inequalities on random terms and print violation
counts per configuration (all zeros expected).

Example:

    python scripts/inequality_sweep.py --pairs 20000 --seed 3
"""

import argparse
import random
import sys
import time

from wqo.base_orders import Cmp, parse_spec
from wqo.randgen import random_term
from wqo.terms import bar_entry, c_value, j_index, lex_compare


def sweep(spec_text, height, pairs, rng):
    spec = parse_spec(spec_text)
    equiv_bad = 0
    chain_bad = 0
    accepted = 0
    t0 = time.perf_counter()
    for _ in range(pairs):
        a = random_term(spec, height, rng, nat_bound=6)
        b = random_term(spec, height, rng, nat_bound=6)
        j = j_index(a, b)
        if lex_compare(a, b) is not lex_compare(bar_entry(spec, a, j),
                                                bar_entry(spec, b, j)):
            equiv_bad += 1
    while accepted < pairs // 10:
        a = random_term(spec, height, rng, nat_bound=4)
        b = random_term(spec, height, rng, nat_bound=4)
        c = random_term(spec, height, rng, nat_bound=4)
        if lex_compare(a, b) is Cmp.LT:
            a, b = b, a
        if lex_compare(a, b) is not Cmp.GT or j_index(a, b) > j_index(b, c):
            continue
        accepted += 1
        if lex_compare(c_value(spec, a, b), c_value(spec, b, c)) is not Cmp.GT:
            chain_bad += 1
    dt = time.perf_counter() - t0
    print(f"{spec_text:>18} h={height}: {pairs} pairs "
          f"({equiv_bad} equivalence violations), {accepted} chains "
          f"({chain_bad} chain violations), {dt:.1f}s")
    return equiv_bad + chain_bad


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--pairs", type=int, default=10000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--specs", nargs="*", default=["omega", "omega+(fin:3)"])
    ap.add_argument("--heights", nargs="*", type=int, default=[1, 2, 3])
    args = ap.parse_args()

    rng = random.Random(args.seed)
    total = 0
    for spec_text in args.specs:
        for height in args.heights:
            total += sweep(spec_text, height, args.pairs, rng)
    print(f"total violations: {total}")
    return 1 if total else 0


if __name__ == "__main__":
    sys.exit(main())
