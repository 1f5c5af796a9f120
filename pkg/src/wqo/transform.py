"""Level-wise conversion of descending term sequences into barrier arrays.

A strictly descending window f(0) > f(1) > ... of height-n terms induces,
for each k <= n, an array on the length-(k+1) barrier with values in
(k naturals) x (height-(n-k) terms).  Level 0 packages f itself; level
k+1 is built from level k by splitting each node u into its related halves
(s, t) and recording the first-difference index and the collapse of the
two level-k terms:

    coords(u) = coords(s) + (j(term(s), term(t)),)
    term(u)   = c(term(s), term(t))

Badness propagates upward level by level, so a strictly descending input
window yields arrays that are bad on the window at every level; the
pipeline checks each level and flags any counterexample to the
propagation as a violation in the report.  All verdicts are explicitly
window-relative.

Sequence file format: a header line `spec=<spec> height=<n>`, then one
term per line in the term grammar.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Tuple

from .barriers import Node, format_node
from .base_orders import (
    GT,
    BaseElem,
    OrderSpec,
    format_spec,
    has_omega_form,
    parse_spec,
)
from .errors import (
    AlreadyMinimal,
    HeightExhausted,
    InvalidTerm,
    MissingValue,
    NotDescending,
    NotOmegaPlusForm,
    ParseError,
    UnsupportedLeafDescent,
    WindowTooSmall,
)
from .quasiorders import Product, ProductElem, TermOrder, Verdict, _scan_pairs
from .terms import (
    Term,
    bar_entry,
    format_term,
    is_zero_term,
    j_index,
    lex_compare,
    parse_term,
    validate_term,
)


class DescendingSequence:
    """A strictly descending window of equal-height terms over one spec.

    Construction validates every term and rejects any adjacent pair that
    fails strict descent, reporting the first offending index.
    """

    __slots__ = ("spec", "height", "values")

    def __init__(self, spec: OrderSpec, height: int, values):
        if not has_omega_form(spec):
            raise NotOmegaPlusForm(
                f"descending windows need an initial copy of the naturals, "
                f"got {format_spec(spec)}")
        values = tuple(values)
        for t in values:
            v = validate_term(spec, t)
            if v is not None:
                raise InvalidTerm(v)
            if t.height != height:
                raise InvalidTerm(
                    _height_violation(t.height, height))
        for i in range(len(values) - 1):
            if lex_compare(values[i], values[i + 1]) is not GT:
                raise NotDescending(
                    f"values[{i}] does not strictly descend to values[{i + 1}]",
                    index=i + 1)
        self.spec = spec
        self.height = height
        self.values = values

    def __len__(self):
        return len(self.values)


def _height_violation(got, want):
    from .terms import TermViolation

    return TermViolation((), f"height {got}, expected {want}")


@dataclass
class LevelTable:
    """Array values for one level: node -> (coords, term).

    Nodes have length `level + 1`, coordinate tuples have length exactly
    `level`, and terms have height `term_height`.  Keys are stored as
    plain entry tuples; `items()` exposes them as nodes.
    """

    level: int
    window: int
    spec: OrderSpec
    term_height: int
    table: Dict[Tuple[int, ...], ProductElem]

    def value_at(self, node) -> ProductElem:
        key = node.entries if isinstance(node, Node) else tuple(node)
        try:
            return self.table[key]
        except KeyError:
            raise MissingValue(f"no value at {','.join(map(str, key))}") from None

    def items(self):
        for key in sorted(self.table):
            yield Node(key), self.table[key]

    def j_table(self) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
        """The coordinate part only: node -> tuple of first-difference
        indices."""
        return {key: value.coords for key, value in self.table.items()}

    def __len__(self):
        return len(self.table)


def build_level0(ds: DescendingSequence) -> LevelTable:
    """Package the window itself: (i,) -> (no coordinates, f(i))."""
    table = {(i,): ProductElem((), t) for i, t in enumerate(ds.values)}
    return LevelTable(0, len(ds.values), ds.spec, ds.height, table)


def build_next_level(prev: LevelTable) -> LevelTable:
    """One step of the recursion: combine the two halves of every node one
    length up via the first-difference index and the collapse."""
    if prev.term_height == 0:
        raise HeightExhausted(
            "level terms have height 0; there is no further level")
    spec = prev.spec
    window = prev.window
    size = prev.level + 2
    prev_table = prev.table
    table = {}
    for u in combinations(range(window), size):
        s, t = u[:-1], u[1:]
        try:
            ps = prev_table[s]
            pt = prev_table[t]
        except KeyError as exc:
            raise MissingValue(
                f"previous level has no value at "
                f"{','.join(map(str, exc.args[0]))}") from None
        j = j_index(ps.tail, pt.tail)
        table[u] = ProductElem(ps.coords + (j,), bar_entry(spec, ps.tail, j))
    return LevelTable(prev.level + 1, window, spec, prev.term_height - 1, table)


def build_levels(ds: DescendingSequence) -> List[LevelTable]:
    """All levels 0..n of the recursion for a window of height-n terms."""
    levels = [build_level0(ds)]
    for _ in range(ds.height):
        levels.append(build_next_level(levels[-1]))
    return levels


@dataclass(frozen=True)
class LevelVerdict:
    level: int
    verdict: Verdict
    build_seconds: float
    scan_seconds: float


@dataclass
class WitnessReport:
    """Record of one pipeline run: the input summary, the per-level
    verdicts, and any counterexamples to badness propagation."""

    spec: OrderSpec
    height: int
    window: int
    source: str
    levels: List[LevelVerdict] = field(default_factory=list)
    propagation_failures: List[int] = field(default_factory=list)
    total_seconds: float = 0.0

    @property
    def propagation_ok(self) -> bool:
        return not self.propagation_failures

    def all_bad(self) -> bool:
        return all(not lv.verdict.good for lv in self.levels)


def run_pipeline(ds: DescendingSequence, source: str = "explicit",
                 jobs: int = 1) -> WitnessReport:
    """Build every level and scan each one for a goodness witness.

    The window must admit at least one related pair at the top level,
    i.e. contain at least height+2 values.  Level k is scanned with the
    componentwise order on k naturals paired with the height-(n-k) term
    order; a bad level followed by a good one is recorded as a
    propagation violation (a correctness failure, not a valid outcome).
    """
    n = ds.height
    window = len(ds.values)
    if window < n + 2:
        raise WindowTooSmall(
            f"window of {window} values admits no related pair at level {n}; "
            f"need at least {n + 2}")
    started = time.perf_counter()
    report = WitnessReport(ds.spec, n, window, source)
    prev = None
    for k in range(n + 1):
        t0 = time.perf_counter()
        level = build_level0(ds) if k == 0 else build_next_level(prev)
        t1 = time.perf_counter()
        q = Product(k, TermOrder(ds.spec, n - k))
        hit = _scan_pairs(q.leq, level.table, k + 1, window, jobs)
        verdict = Verdict(False) if hit is None else Verdict(
            True, (Node(hit[0]), Node(hit[1])))
        t2 = time.perf_counter()
        report.levels.append(LevelVerdict(k, verdict, t1 - t0, t2 - t1))
        prev = level
    report.propagation_failures = find_propagation_failures(report.levels)
    report.total_seconds = time.perf_counter() - started
    return report


def find_propagation_failures(levels: List[LevelVerdict]) -> List[int]:
    """Levels whose bad verdict is followed by a good one; must be empty
    for a correct build."""
    return [
        k for k in range(len(levels) - 1)
        if not levels[k].verdict.good and levels[k + 1].verdict.good
    ]


# --- canonical descent -------------------------------------------------------

def descent_step(spec: OrderSpec, t: Term, fuel: int) -> Term:
    """One strictly decreasing step.

    Drops a trailing least entry, or replaces the last entry by `fuel`
    copies of its own step; at height 0 the step decrements a natural
    leaf.  Leaves in the tail part of a sum have no canonical
    predecessor, so descent through them is refused.
    """
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    if t.height == 0:
        if t.content.side != 0:
            raise UnsupportedLeafDescent(
                f"leaf {format_term(t)} sits outside the natural part; "
                "supply an explicit sequence file instead")
        if t.content.payload == 0:
            raise AlreadyMinimal("the zero leaf has no predecessor")
        return Term.leaf(BaseElem.left(t.content.payload - 1))
    if len(t.content) == 0:
        raise AlreadyMinimal("the empty sequence has no predecessor")
    last = t.content[-1]
    if is_zero_term(last):
        return Term(t.height, t.content[:-1])
    stepped = descent_step(spec, last, fuel)
    return Term(t.height, t.content[:-1] + (stepped,) * fuel)


def canonical_descent(spec: OrderSpec, height: int, start: Term,
                      fuel: int, steps: int) -> DescendingSequence:
    """Generate a strictly descending window by iterating `descent_step`.

    Produces at most `steps` terms starting from `start`; stops early with
    a shorter window when the least term is reached (the window length is
    readable off the result).
    """
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    v = validate_term(spec, start)
    if v is not None:
        raise InvalidTerm(v)
    if start.height != height:
        raise InvalidTerm(_height_violation(start.height, height))
    if is_zero_term(start):
        raise AlreadyMinimal("start is already the least term")
    values = [start]
    while len(values) < steps and not is_zero_term(values[-1]):
        values.append(descent_step(spec, values[-1], fuel))
    return DescendingSequence(spec, height, values)


# --- sequence files ----------------------------------------------------------

def format_sequence_file(ds: DescendingSequence) -> str:
    lines = [f"spec={format_spec(ds.spec)} height={ds.height}"]
    lines.extend(format_term(t) for t in ds.values)
    return "\n".join(lines) + "\n"


def parse_sequence_file(text: str) -> DescendingSequence:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty sequence file", line=1)
    header = lines[0].strip()
    if not header.startswith("spec=") or " height=" not in header:
        raise ParseError("expected header 'spec=<spec> height=<n>'", line=1)
    spec_text, height_text = header[len("spec="):].split(" height=", 1)
    try:
        spec = parse_spec(spec_text.strip())
    except ParseError as exc:
        raise ParseError(f"bad spec in header: {exc}", line=1) from None
    if not height_text.strip().isdigit():
        raise ParseError("height must be a natural number", line=1)
    height = int(height_text.strip())
    values = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(parse_term(line, height))
        except ParseError as exc:
            raise ParseError(str(exc), line=lineno) from None
    return DescendingSequence(spec, height, values)


# --- report formats ----------------------------------------------------------

def format_report_text(r: WitnessReport) -> str:
    """Human-readable report, including timings."""
    out = [
        "descending-window transform report",
        f"  spec:    {format_spec(r.spec)}",
        f"  height:  {r.height}",
        f"  window:  {r.window}",
        f"  source:  {r.source}",
    ]
    for lv in r.levels:
        out.append(
            f"  level k={lv.level}: {lv.verdict}  "
            f"[build {lv.build_seconds:.3f}s, scan {lv.scan_seconds:.3f}s]")
    if r.propagation_ok:
        out.append("  propagation: ok (no bad level is followed by a good one)")
    else:
        ks = ",".join(str(k) for k in r.propagation_failures)
        out.append(f"  propagation: VIOLATED at level(s) {ks}")
    out.append(f"  total: {r.total_seconds:.3f}s")
    return "\n".join(out) + "\n"


def format_report_structured(r: WitnessReport) -> str:
    """Byte-stable line schema; identical runs produce identical bytes, so
    timings are deliberately omitted."""
    out = [
        "report-format=wqo.v1",
        f"spec={format_spec(r.spec)}",
        f"height={r.height}",
        f"window={r.window}",
        f"source={r.source}",
    ]
    for lv in r.levels:
        if lv.verdict.good:
            s, t = lv.verdict.witness
            out.append(
                f"k={lv.level} verdict=good "
                f"witness={format_node(s)},|{format_node(t)}")
        else:
            out.append(f"k={lv.level} verdict=bad")
    if r.propagation_ok:
        out.append("propagation=ok")
    else:
        ks = ",".join(str(k) for k in r.propagation_failures)
        out.append(f"propagation=violated:{ks}")
    return "\n".join(out) + "\n"


def format_report_json(r: WitnessReport) -> str:
    """Machine-readable report; timings omitted for byte stability."""
    doc = {
        "format": "wqo.v1",
        "spec": format_spec(r.spec),
        "height": r.height,
        "window": r.window,
        "source": r.source,
        "levels": [
            {
                "k": lv.level,
                "verdict": "good" if lv.verdict.good else "bad",
                "witness": (
                    None if not lv.verdict.good else
                    [list(lv.verdict.witness[0]), list(lv.verdict.witness[1])]
                ),
            }
            for lv in r.levels
        ],
        "propagation_ok": r.propagation_ok,
        "propagation_failures": r.propagation_failures,
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
