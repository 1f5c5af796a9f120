"""Acceptance suite.

One test per criterion, each printing a single PASS/FAIL line (run with
`pytest tests/test_acceptance.py -v -s` to see them).  Counts, windows,
and time bounds are fixed here and match the package contract.
"""

import math
import random
import time
from itertools import combinations

from wqo.barriers import Node, enumerate_window, split, union
from wqo.base_orders import (
    OMEGA,
    BaseElem,
    Cmp,
    Finite,
    OmegaPlus,
    compare_base,
    embed_base,
    format_spec,
    one_plus,
)
from wqo.cli import main as cli_main
from wqo.quasiorders import Base, FiniteQO, Product, TermOrder, goodness_on_window
from wqo.randgen import random_elem, random_nonzero_term, random_term
from wqo.terms import (
    Term,
    bar_entry,
    c_value,
    j_index,
    lex_compare,
    lift_embedding,
    one_plus_term,
    parse_term,
)
from wqo.transform import (
    DescendingSequence,
    build_levels,
    canonical_descent,
    run_pipeline,
)

from oracles import higman_leq_exhaustive, random_finite_qo

OP3 = OmegaPlus(Finite(3))
W = BaseElem.left


def report(cid, ok, detail):
    line = f"ACCEPTANCE {cid}: {'PASS' if ok else 'FAIL'} ({detail})"
    print(line)
    assert ok, line


# --- criterion 1: collapse inequalities --------------------------------------------

def test_c1_collapse_inequalities():
    started = time.perf_counter()
    rng = random.Random(1001)
    violations = 0
    pairs = 0
    for spec in (OMEGA, OP3):
        for height in (1, 2, 3):
            for _ in range(10_000):
                a = random_term(spec, height, rng, nat_bound=6)
                b = random_term(spec, height, rng, nat_bound=6)
                j = j_index(a, b)
                lhs = lex_compare(a, b)
                rhs = lex_compare(bar_entry(spec, a, j), bar_entry(spec, b, j))
                if lhs is not rhs:
                    violations += 1
                pairs += 1
    triples = 0
    for spec in (OMEGA, OP3):
        for height in (1, 2, 3):
            accepted = 0
            attempts = 0
            while accepted < 200 and attempts < 40_000:
                attempts += 1
                a = random_term(spec, height, rng, nat_bound=4)
                b = random_term(spec, height, rng, nat_bound=4)
                c = random_term(spec, height, rng, nat_bound=4)
                if lex_compare(a, b) is Cmp.LT:
                    a, b = b, a
                if lex_compare(a, b) is not Cmp.GT:
                    continue
                if j_index(a, b) > j_index(b, c):
                    continue
                accepted += 1
                if lex_compare(c_value(spec, a, b), c_value(spec, b, c)) is not Cmp.GT:
                    violations += 1
            triples += accepted
    elapsed = time.perf_counter() - started
    ok = violations == 0 and triples >= 1000 and elapsed < 10.0
    report("C1 collapse-inequality suite", ok,
           f"{pairs} pairs, {triples} triples, {violations} violations, "
           f"{elapsed:.1f}s < 10s")


# --- criterion 2: badness propagation ------------------------------------------------

def _hand_examples():
    ds1 = DescendingSequence(OMEGA, 1, [parse_term(f"[{5 - i}]", 1) for i in range(6)])
    ds2 = DescendingSequence(OMEGA, 1, [parse_term(f"[3,{3 - i}]", 1) for i in range(4)])
    return [ds1, ds2]


def test_c2_badness_propagation():
    rng = random.Random(2002)
    runs = 0
    violations = 0
    attempts = 0
    while runs < 100 and attempts < 2000:
        attempts += 1
        n = rng.choice((1, 2, 3))
        fuel = rng.choice((1, 2, 3))
        window = rng.randint(n + 2, 20)
        start = random_nonzero_term(OMEGA, n, rng, mean_len=2.0, max_len=4,
                                    nat_bound=3)
        ds = canonical_descent(OMEGA, n, start, fuel, window)
        if len(ds) < n + 2:
            continue
        rep = run_pipeline(ds, source=f"generated-{runs}")
        violations += len(rep.propagation_failures)
        runs += 1
    for ds in _hand_examples():
        rep = run_pipeline(ds, source="hand")
        violations += len(rep.propagation_failures)
        runs += 1
    ok = runs == 102 and violations == 0
    report("C2 propagation suite", ok, f"{runs} runs, {violations} violations")


# --- criterion 3: pipeline at scale ---------------------------------------------------

def test_c3_pipeline_at_scale():
    start = parse_term("[[[1]]]", 3)
    t0 = time.perf_counter()
    ds = canonical_descent(OMEGA, 3, start, 2, 30)
    rep = run_pipeline(ds, source="scale-30", jobs=1)
    elapsed30 = time.perf_counter() - t0
    ok30 = (len(ds) == 30 and rep.all_bad() and rep.propagation_ok
            and elapsed30 < 60.0)

    t0 = time.perf_counter()
    ds50 = canonical_descent(OMEGA, 3, start, 2, 50)
    rep50 = run_pipeline(ds50, source="scale-50", jobs=1)
    elapsed50 = time.perf_counter() - t0
    ok50 = len(ds50) == 50 and rep50.all_bad() and elapsed50 < 600.0

    top_pairs = math.comb(30, 5)
    report("C3 pipeline at scale", ok30 and ok50,
           f"N=30 ({top_pairs} top pairs) in {elapsed30:.1f}s < 60s; "
           f"N=50 ({math.comb(50, 5)} top pairs) in {elapsed50:.1f}s < 600s")


# --- criterion 4: embedding oracle agreement ------------------------------------------

def test_c4_embedding_matches_exhaustive_search():
    from wqo.quasiorders import higman_leq

    rng = random.Random(4004)
    disagreements = 0
    cases = 0
    for _ in range(1000):
        size = rng.randrange(1, 5)
        q = FiniteQO(size, random_finite_qo(size, rng))
        s = tuple(rng.randrange(size) for _ in range(rng.randrange(7)))
        t = tuple(rng.randrange(size) for _ in range(rng.randrange(7)))
        if higman_leq(q, s, t) != higman_leq_exhaustive(q.leq, s, t):
            disagreements += 1
        cases += 1
    base = Base(OMEGA)
    for _ in range(1000):
        s = tuple(W(rng.randrange(8)) for _ in range(rng.randrange(7)))
        t = tuple(W(rng.randrange(8)) for _ in range(rng.randrange(7)))
        if higman_leq(base, s, t) != higman_leq_exhaustive(base.leq, s, t):
            disagreements += 1
        cases += 1
    ok = disagreements == 0 and cases == 2000
    report("C4 embedding oracle agreement", ok,
           f"{cases} cases, {disagreements} disagreements")


# --- criterion 5: barrier calculus exhaustively ---------------------------------------

def test_c5_barrier_calculus():
    violations = 0
    for k in (1, 2, 3):
        for u in combinations(range(12), k + 1):
            node = Node(u)
            s, t = split(node)
            if union(s, t) != node:
                violations += 1
            if split(union(s, t)) != (s, t):
                violations += 1
    for k in (1, 2, 3):
        for u in combinations(range(10), k + 2):
            a, b = Node(u[:-1]), Node(u[1:])
            # a and b are related nodes one length up; their halves overlap
            _, s_of_a = split(a)
            s_of_b, _ = split(b)
            if s_of_a != s_of_b:
                violations += 1
    count_checks = 0
    for k in range(1, 6):
        for window in range(k, 31):
            if sum(1 for _ in enumerate_window(k, window)) != math.comb(window, k):
                violations += 1
            count_checks += 1
    ok = violations == 0
    report("C5 barrier calculus", ok,
           f"round-trips+overlap exhaustive, {count_checks} window counts, "
           f"{violations} violations")


# --- criterion 6: order laws -----------------------------------------------------------

BASE_CONFIGS = [OMEGA, OP3, Finite(5), OmegaPlus(OmegaPlus(Finite(2)))]
TERM_CONFIGS = [(spec, h) for spec in (OMEGA, OP3) for h in (1, 2, 3)]


def _law_violations(cmp, triples):
    bad = 0
    for a, b, c in triples:
        ab, ba = cmp(a, b), cmp(b, a)
        if int(ab) != -int(ba):
            bad += 1
        if (ab is Cmp.EQ) != (a == b):
            bad += 1
        if cmp(a, b) is not Cmp.GT and cmp(b, c) is not Cmp.GT:
            if cmp(a, c) is Cmp.GT:
                bad += 1
    return bad


def test_c6_order_laws():
    rng = random.Random(6006)
    violations = 0
    for spec in BASE_CONFIGS:
        triples = [tuple(random_elem(spec, rng, nat_bound=8) for _ in range(3))
                   for _ in range(10_000)]
        violations += _law_violations(lambda a, b: compare_base(spec, a, b), triples)
    for spec, height in TERM_CONFIGS:
        triples = [
            tuple(random_term(spec, height, rng, mean_len=2.0, max_len=4,
                              nat_bound=4) for _ in range(3))
            for _ in range(10_000)
        ]
        violations += _law_violations(lex_compare, triples)
    # strict monotonicity of the shifts
    for spec in (OMEGA, OP3):
        for _ in range(10_000):
            a, b = (random_elem(spec, rng, nat_bound=8) for _ in range(2))
            shifted = compare_base(spec, one_plus(spec, a), one_plus(spec, b))
            if compare_base(spec, a, b) is not shifted:
                violations += 1
    for spec, height in ((OMEGA, 1), (OMEGA, 2), (OP3, 1), (OP3, 2)):
        for _ in range(10_000):
            a = random_term(spec, height, rng, mean_len=2.0, max_len=4, nat_bound=4)
            b = random_term(spec, height, rng, mean_len=2.0, max_len=4, nat_bound=4)
            if lex_compare(a, b) is not lex_compare(one_plus_term(spec, a),
                                                    one_plus_term(spec, b)):
                violations += 1
    ok = violations == 0
    report("C6 order laws", ok,
           f"{len(BASE_CONFIGS) + len(TERM_CONFIGS)} comparison configs x 10^4 "
           f"triples, shift monotonicity, {violations} violations")


# --- criterion 7: transport along embeddings --------------------------------------------

def test_c7_embedding_transport():
    # The finite order has no initial copy of the naturals, so its own
    # pipeline runs in the minimal completion (over omega, where its terms
    # already live).  j-table identity under lifting requires the embedding
    # to respect that copy: it must send the least element to the least
    # element and commute with the shift, which the inclusion does.  The
    # tail embedding i -> (1,i) provably does not (1+[0] grows the zero
    # run over omega while the lifted [y.w.0] sits outside the segment and
    # is fixed), so for it only the per-level verdicts are compared.
    z_spec = Finite(4)
    x_spec = OmegaPlus(Finite(4))
    inclusion = embed_base(z_spec, x_spec, {W(i): W(i) for i in range(4)})
    into_tail = embed_base(z_spec, x_spec,
                           {W(i): BaseElem.right(W(i)) for i in range(4)})
    rng = random.Random(7007)
    runs = 0
    mismatches = 0
    attempts = 0
    while runs < 20 and attempts < 500:
        attempts += 1
        n = rng.choice((1, 2))
        window = rng.randint(n + 2, 15)
        # leaves stay below 4, so the window is simultaneously a window of
        # finite-order terms and of omega terms
        start = random_nonzero_term(OMEGA, n, rng, mean_len=2.0, max_len=3,
                                    nat_bound=4)
        ds_z = canonical_descent(OMEGA, n, start, rng.choice((1, 2)), window)
        if len(ds_z) < n + 2:
            continue
        levels_z = build_levels(ds_z)
        verdicts_z = _level_verdicts(levels_z, OMEGA, len(ds_z))

        for emb, compare_j in ((inclusion, True), (into_tail, False)):
            lifted = [lift_embedding(emb, t) for t in ds_z.values]
            ds_x = DescendingSequence(x_spec, n, lifted)
            levels_x = build_levels(ds_x)
            verdicts_x = _level_verdicts(levels_x, x_spec, len(ds_x))
            if compare_j:
                for lz, lx in zip(levels_z, levels_x):
                    if lz.j_table() != lx.j_table():
                        mismatches += 1
                if verdicts_z != verdicts_x:
                    mismatches += 1
            else:
                if ([v.good for v in verdicts_z]
                        != [v.good for v in verdicts_x]):
                    mismatches += 1
        runs += 1
    ok = runs == 20 and mismatches == 0
    report("C7 embedding transport", ok,
           f"{runs} runs over {format_spec(z_spec)} -> {format_spec(x_spec)} "
           f"(inclusion: j-tables+verdicts, tail: verdicts), "
           f"{mismatches} mismatches")


def _level_verdicts(levels, spec, window):
    out = []
    for lvl in levels:
        q = Product(lvl.level, TermOrder(spec, lvl.term_height))
        out.append(goodness_on_window(q, lvl.table, window, k=lvl.level + 1))
    return out


# --- criterion 8: determinism -------------------------------------------------------------

def test_c8_determinism(capsys):
    args = ["transform", "run", "--spec", "omega", "--height", "3",
            "--start", "[[[1]]]", "--fuel", "2", "--steps", "30",
            "--format", "structured"]
    code1 = cli_main(list(args))
    out1 = capsys.readouterr().out
    code2 = cli_main(list(args))
    out2 = capsys.readouterr().out
    ok = code1 == code2 == 0 and out1.encode() == out2.encode() and out1
    report("C8 determinism", bool(ok),
           f"two structured reports, {len(out1.encode())} bytes each, identical")
