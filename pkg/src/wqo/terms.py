"""Iterated orders of non-increasing finite sequences.

A height-0 term is a single element of a base order X.  A height-n term
(n >= 1) is a finite sequence of height-(n-1) terms, non-increasing under
the height-(n-1) comparison; the trees are balanced, so every leaf sits at
depth exactly n.  Comparison is lexicographic: the first differing entry
decides, and on a tie of entries the shorter sequence is smaller.  The
empty sequence is the least term of every positive height.

For positive heights the terms <0,0,...,0> (repeated least entries) form
an initial segment order-isomorphic to the naturals, so every such order
again has a least element and a strictly increasing `one_plus_term` that
fixes everything outside that segment.  `bar_entry` pads a term with least
entries past its length and shifts entries in range by one_plus, and
`c_value` collapses a comparison one height down by taking the padded
entry at the first difference.

Term text form: a height-0 term is a base element (`w.3`, `y.w.1`, or bare
`3`); a height-n term is `[` comma-separated height-(n-1) terms `]`.
"""

from __future__ import annotations

from typing import Optional

from .base_orders import (
    EQ,
    GT,
    LT,
    BaseElem,
    Cmp,
    Embedding,
    Finite,
    OrderSpec,
    _parse_elem_at,
    compare_elems,
    format_elem,
    format_spec,
    has_omega_form,
    validate_elem,
    zero_elem,
)
from .errors import HeightMismatch, NotOmegaPlusForm, ParseError

# When enabled, lex_compare re-derives every answer from the first-difference
# index and the two comparison clauses.  Slow; meant for test runs.
CROSS_CHECK = False


class Term:
    """A balanced leaf-labeled tree: `content` is a BaseElem at height 0,
    otherwise a tuple of height-(height-1) terms."""

    __slots__ = ("height", "content")

    def __init__(self, height: int, content):
        self.height = height
        self.content = content

    @classmethod
    def leaf(cls, elem: BaseElem) -> "Term":
        return cls(0, elem)

    @classmethod
    def seq(cls, height: int, children) -> "Term":
        return cls(height, tuple(children))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self.height == other.height and self.content == other.content

    def __hash__(self):
        return hash((self.height, self.content))

    def __len__(self):
        if self.height == 0:
            raise HeightMismatch("height-0 terms have no entries")
        return len(self.content)

    def __repr__(self):
        return f"Term(h{self.height}:{format_term(self)})"


class TermViolation:
    """Why and where a tree fails the carrier invariants.

    `path` is the child-index path from the root to the first offending
    position.
    """

    __slots__ = ("path", "reason")

    def __init__(self, path, reason):
        self.path = tuple(path)
        self.reason = reason

    def __repr__(self):
        return f"TermViolation(path={self.path}, reason={self.reason!r})"

    def __str__(self):
        where = "/".join(str(i) for i in self.path) or "root"
        return f"invalid term at {where}: {self.reason}"


def validate_term(spec: OrderSpec, t) -> Optional[TermViolation]:
    """None when `t` is a valid term over `spec`, else the first violation."""
    return _validate_at(spec, t, (), t.height if isinstance(t, Term) else None)


def _validate_at(spec, t, path, want_height):
    if not isinstance(t, Term):
        return TermViolation(path, "not a term")
    if want_height is not None and t.height != want_height:
        return TermViolation(path, f"height {t.height}, expected {want_height}")
    if t.height == 0:
        if not validate_elem(spec, t.content):
            return TermViolation(path, f"leaf is not an element of {format_spec(spec)}")
        return None
    if not isinstance(t.content, tuple):
        return TermViolation(path, "internal node content must be a tuple of terms")
    for i, child in enumerate(t.content):
        v = _validate_at(spec, child, path + (i,), t.height - 1)
        if v is not None:
            return v
    for i in range(len(t.content) - 1):
        if lex_compare(t.content[i], t.content[i + 1]) is LT:
            return TermViolation(path + (i + 1,), "entries must be non-increasing")
    return None


def lex_compare(a: Term, b: Term) -> Cmp:
    """Total order on equal-height terms.

    The first differing entry decides; with no difference on the common
    prefix the shorter sequence is smaller.  Height 0 compares the leaves
    in the base order.
    """
    result = _lex_scan(a, b)
    if CROSS_CHECK:
        assert result is _lex_two_clause(a, b), (a, b, result)
    return result


def _lex_scan(a, b):
    if a is b:
        return EQ
    if a.height != b.height:
        raise HeightMismatch(f"cannot compare heights {a.height} and {b.height}")
    if a.height == 0:
        return compare_elems(a.content, b.content)
    ca, cb = a.content, b.content
    for x, y in zip(ca, cb):
        c = _lex_scan(x, y)
        if c is not EQ:
            return c
    la, lb = len(ca), len(cb)
    if la == lb:
        return EQ
    return LT if la < lb else GT


def _lex_two_clause(a, b):
    # direct evaluation of the two comparison clauses via the first
    # differing index; reference path for the cross-check
    if a.height == 0:
        return compare_elems(a.content, b.content)
    j = j_index(a, b)
    if j < min(len(a.content), len(b.content)):
        return _lex_scan(a.content[j], b.content[j])
    if len(a.content) == len(b.content):
        return EQ
    return LT if len(a.content) < len(b.content) else GT


def j_index(a: Term, b: Term) -> int:
    """First index where two equal-height sequences differ, or the shorter
    length when one is a prefix of the other."""
    if not isinstance(a, Term) or not isinstance(b, Term) or a.height != b.height:
        raise HeightMismatch("j_index needs two terms of equal height")
    if a.height == 0:
        raise HeightMismatch("j_index needs internal terms (height >= 1)")
    ca, cb = a.content, b.content
    for i, (x, y) in enumerate(zip(ca, cb)):
        if x is not y and _lex_scan(x, y) is not EQ:
            return i
    return min(len(ca), len(cb))


def zero_term(spec: OrderSpec, height: int) -> Term:
    """Least term of the given height: the empty sequence, or the least
    base element at height 0."""
    if height == 0:
        return Term.leaf(zero_elem(spec))
    return Term(height, ())


def is_zero_term(t: Term) -> bool:
    if t.height == 0:
        return t.content.side == 0 and t.content.payload == 0
    return len(t.content) == 0


def _in_initial_segment(t: Term) -> bool:
    # <0,...,0> terms: every entry is the least term one height down
    return all(is_zero_term(c) for c in t.content)


def _child_level_has_omega_form(spec, height):
    # child level of a height-n term: the base order when n = 1, otherwise
    # a positive-height term order, which always has the required form
    return height >= 2 or has_omega_form(spec)


def _least_child(spec, height):
    # least term one height down; unlike zero_term this accepts non-empty
    # finite base orders, whose least leaf exists even without an omega part
    if height == 1:
        if isinstance(spec, Finite) and spec.size == 0:
            raise NotOmegaPlusForm("fin:0 has no least element to append")
        return Term.leaf(BaseElem.left(0))
    return Term(height - 1, ())


def one_plus_term(spec: OrderSpec, t: Term) -> Term:
    """Strictly increasing shift on terms.

    Height 0 delegates to the base order.  At positive heights the shift
    acts on the initial segment of <0,...,0> terms by appending one more
    least entry and fixes every term outside that segment.
    """
    if t.height == 0:
        if not has_omega_form(spec):
            raise NotOmegaPlusForm(
                f"{format_spec(spec)} has no initial copy of the naturals")
        if t.content.side == 0:
            return Term.leaf(BaseElem.left(t.content.payload + 1))
        return t
    if _in_initial_segment(t):
        return Term(t.height, t.content + (_least_child(spec, t.height),))
    return t


def bar_entry(spec: OrderSpec, a: Term, j: int) -> Term:
    """Padded entry: one_plus of the j-th entry when j is in range, the
    least child-level term otherwise.

    Padded entries are non-increasing in j because the sequence itself is
    non-increasing and the padding is the minimum.
    """
    if a.height < 1:
        raise HeightMismatch("bar_entry needs an internal term")
    if not _child_level_has_omega_form(spec, a.height):
        raise NotOmegaPlusForm(
            f"entries of height-1 terms over {format_spec(spec)} have no "
            "initial copy of the naturals")
    if j < len(a.content):
        return one_plus_term(spec, a.content[j])
    return zero_term(spec, a.height - 1)


def c_value(spec: OrderSpec, a: Term, b: Term) -> Term:
    """Collapse of a comparison one height down: the padded entry of `a`
    at the first index where `a` and `b` differ."""
    return bar_entry(spec, a, j_index(a, b))


def lift_embedding(e: Embedding, t: Term) -> Term:
    """Apply a base embedding to every leaf, preserving the tree shape."""
    if t.height == 0:
        return Term.leaf(e(t.content))
    return Term(t.height, tuple(lift_embedding(e, c) for c in t.content))


# --- text grammar ----------------------------------------------------------

def format_term(t: Term) -> str:
    if t.height == 0:
        return format_elem(t.content)
    return "[" + ",".join(format_term(c) for c in t.content) + "]"


def parse_term(text: str, height: int) -> Term:
    t, pos = _parse_term_at(text, 0, height)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError(f"trailing input after term: {text[pos:]!r}", col=pos + 1)
    return t


def _skip_ws(text, pos):
    while pos < len(text) and text[pos] == " ":
        pos += 1
    return pos


def _parse_term_at(text, pos, height):
    pos = _skip_ws(text, pos)
    if height == 0:
        if pos < len(text) and text[pos] == "[":
            raise ParseError("found '[' where a height-0 leaf was expected", col=pos + 1)
        elem, pos = _parse_elem_at(text, pos)
        return Term.leaf(elem), pos
    if pos >= len(text) or text[pos] != "[":
        raise ParseError(f"expected '[' opening a height-{height} term", col=pos + 1)
    pos = _skip_ws(text, pos + 1)
    children = []
    if pos < len(text) and text[pos] == "]":
        return Term(height, ()), pos + 1
    while True:
        child, pos = _parse_term_at(text, pos, height - 1)
        children.append(child)
        pos = _skip_ws(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos = _skip_ws(text, pos + 1)
            continue
        if pos < len(text) and text[pos] == "]":
            return Term(height, tuple(children)), pos + 1
        raise ParseError("expected ',' or ']' in term", col=pos + 1)
