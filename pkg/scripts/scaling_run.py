#!/usr/bin/env python3
"""Time the transform pipeline at configurable scale.

Example:

    python scripts/scaling_run.py --height 3 --window 50 --fuel 2
"""

import argparse
import math
import sys
import time

from wqo.base_orders import parse_spec
from wqo.terms import format_term, parse_term
from wqo.transform import canonical_descent, format_report_text, run_pipeline


def default_start(height):
    return "[" * height + "1" + "]" * height


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--spec", default="omega")
    ap.add_argument("--height", type=int, default=3)
    ap.add_argument("--start", default=None, help="default: [...[1]...]")
    ap.add_argument("--fuel", type=int, default=2)
    ap.add_argument("--window", type=int, default=50)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    spec = parse_spec(args.spec)
    start = parse_term(args.start or default_start(args.height), args.height)
    t0 = time.perf_counter()
    ds = canonical_descent(spec, args.height, start, args.fuel, args.window)
    gen = time.perf_counter() - t0
    print(f"descent: {len(ds)} terms from {format_term(start)} "
          f"(fuel {args.fuel}) in {gen:.2f}s")
    top_pairs = math.comb(len(ds), args.height + 2)
    print(f"top-level pairs: {top_pairs}")

    report = run_pipeline(ds, source="scaling-run", jobs=args.jobs)
    sys.stdout.write(format_report_text(report))
    if not (report.all_bad() and report.propagation_ok):
        print("UNEXPECTED: descending input did not stay bad on every level")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
