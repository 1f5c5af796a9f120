"""Constructible linear orders with decidable comparison.

The order grammar is closed: `Finite(k)` with elements 0..k-1, `Omega` (the
naturals), and `OmegaPlus(Y)` whose carrier is an initial copy of the
naturals followed by a copy of Y.  Orders of the latter two shapes have a
least element `zero_elem` and a strictly increasing map `one_plus` that
shifts the natural part and fixes the tail, so zero < one_plus(x) for
every x.

Text forms (used by the CLI and by term leaves):

    spec    := "fin:<k>" | "omega" | "omega+(<spec>)"
    element := "w.<n>" | "y.<element>" | "<n>"      (bare n is sugar for w.<n>)

Canonical output always uses the `w.` / `y.` form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .errors import InvalidElement, NotMonotone, NotOmegaPlusForm, ParseError


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


LT, EQ, GT = Cmp.LT, Cmp.EQ, Cmp.GT


@dataclass(frozen=True)
class Finite:
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise ValueError(f"finite order needs size >= 0, got {self.size}")


@dataclass(frozen=True)
class Omega:
    pass


@dataclass(frozen=True)
class OmegaPlus:
    tail: "OrderSpec"


OrderSpec = Union[Finite, Omega, OmegaPlus]

OMEGA = Omega()


def has_omega_form(spec: OrderSpec) -> bool:
    """True when the order starts with a copy of the naturals."""
    return isinstance(spec, (Omega, OmegaPlus))


def normalize_spec(spec: OrderSpec) -> OrderSpec:
    """Rewrite Omega as the isomorphic sum with an empty tail."""
    if isinstance(spec, Omega):
        return OmegaPlus(Finite(0))
    if isinstance(spec, OmegaPlus):
        return OmegaPlus(normalize_spec(spec.tail))
    return spec


class BaseElem:
    """An element of a constructible order.

    `side` 0 is the natural part (payload: a natural number); side 1 is the
    tail part of a sum (payload: a BaseElem of the tail).  Elements of
    Finite and Omega orders live on side 0.
    """

    __slots__ = ("side", "payload")

    def __init__(self, side: int, payload):
        self.side = side
        self.payload = payload

    @classmethod
    def left(cls, n: int) -> "BaseElem":
        return cls(0, n)

    @classmethod
    def right(cls, elem: "BaseElem") -> "BaseElem":
        return cls(1, elem)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, BaseElem):
            return NotImplemented
        return self.side == other.side and self.payload == other.payload

    def __hash__(self):
        return hash((self.side, self.payload))

    def __repr__(self):
        return f"BaseElem({format_elem(self)!r})"


def validate_elem(spec: OrderSpec, e) -> bool:
    """Structural membership test for `e` in the carrier of `spec`."""
    while True:
        if not isinstance(e, BaseElem):
            return False
        if isinstance(spec, Finite):
            return e.side == 0 and isinstance(e.payload, int) and 0 <= e.payload < spec.size
        if isinstance(spec, Omega):
            return e.side == 0 and isinstance(e.payload, int) and e.payload >= 0
        # OmegaPlus
        if e.side == 0:
            return isinstance(e.payload, int) and e.payload >= 0
        spec, e = spec.tail, e.payload


def check_elem(spec: OrderSpec, e) -> None:
    if not validate_elem(spec, e):
        raise InvalidElement(f"{_safe_elem_text(e)} is not an element of {format_spec(spec)}")


def _safe_elem_text(e) -> str:
    try:
        return format_elem(e)
    except Exception:
        return repr(e)


def compare_elems(a: BaseElem, b: BaseElem) -> Cmp:
    """Compare two elements of the same order; assumes both are valid."""
    while True:
        if a.side != b.side:
            return LT if a.side < b.side else GT
        if a.side == 0:
            pa, pb = a.payload, b.payload
            if pa < pb:
                return LT
            return GT if pa > pb else EQ
        a, b = a.payload, b.payload


def compare_base(spec: OrderSpec, a: BaseElem, b: BaseElem) -> Cmp:
    """Total-order comparison on `spec`: the natural part precedes the tail."""
    check_elem(spec, a)
    check_elem(spec, b)
    return compare_elems(a, b)


def zero_elem(spec: OrderSpec) -> BaseElem:
    """Least element of an order with an initial copy of the naturals."""
    if not has_omega_form(spec):
        raise NotOmegaPlusForm(f"{format_spec(spec)} has no initial copy of the naturals")
    return BaseElem.left(0)


def one_plus(spec: OrderSpec, x: BaseElem) -> BaseElem:
    """Strictly increasing shift: left n -> left n+1, tail elements fixed."""
    if not has_omega_form(spec):
        raise NotOmegaPlusForm(f"{format_spec(spec)} has no initial copy of the naturals")
    check_elem(spec, x)
    if x.side == 0:
        return BaseElem.left(x.payload + 1)
    return x


class Embedding:
    """A validated order embedding between two constructible orders.

    Table embeddings are checked exhaustively on their finite support;
    rule embeddings are checked on a random sample of pairs (exhaustive
    checking is impossible for infinite sources), which the constructor
    documents through `sample_checked`.
    """

    __slots__ = ("source", "target", "_fn", "description", "sample_checked")

    def __init__(self, source, target, fn, description, sample_checked=0):
        self.source = source
        self.target = target
        self._fn = fn
        self.description = description
        self.sample_checked = sample_checked

    def __call__(self, x: BaseElem) -> BaseElem:
        check_elem(self.source, x)
        y = self._fn(x)
        check_elem(self.target, y)
        return y

    def __repr__(self):
        return f"Embedding({self.description})"


def embed_base(source: OrderSpec, target: OrderSpec,
               mapping: Union[Mapping, Callable[[BaseElem], BaseElem]],
               *, samples: int = 1000, seed: int = 0) -> Embedding:
    """Build and validate an embedding of `source` into `target`.

    `mapping` is either a finite table (dict from source elements to target
    elements, checked exhaustively on all pairs of its support) or a rule
    (callable, checked on `samples` random pairs drawn with `seed`).
    Raises NotMonotone with a counterexample pair when a checked pair
    violates order preservation.
    """
    if callable(mapping) and not isinstance(mapping, Mapping):
        return _embed_from_rule(source, target, mapping, samples=samples, seed=seed)
    return _embed_from_table(source, target, dict(mapping))


def _embed_check_pair(source, target, a, b, ea, eb):
    if compare_elems(a, b) != compare_elems(ea, eb):
        raise NotMonotone(
            f"mapping is not order preserving on ({format_elem(a)}, {format_elem(b)})",
            pair=(a, b),
        )


def _embed_from_table(source, target, table):
    for k, v in table.items():
        check_elem(source, k)
        check_elem(target, v)
    items = list(table.items())
    for i, (a, ea) in enumerate(items):
        for b, eb in items[i + 1:]:
            _embed_check_pair(source, target, a, b, ea, eb)

    def fn(x, _table=table):
        try:
            return _table[x]
        except KeyError:
            raise InvalidElement(
                f"{format_elem(x)} is outside the declared support of the embedding"
            ) from None

    desc = "table{" + ",".join(
        f"{format_elem(k)}->{format_elem(v)}" for k, v in items) + "}"
    return Embedding(source, target, fn, desc)


def _embed_from_rule(source, target, rule, *, samples, seed):
    # sample-based validation: exhaustive checking is impossible for
    # infinite sources, so draw `samples` random pairs
    import random

    from . import randgen

    rng = random.Random(seed)
    checked = 0
    for _ in range(samples):
        a = randgen.random_elem(source, rng)
        b = randgen.random_elem(source, rng)
        ea, eb = rule(a), rule(b)
        check_elem(target, ea)
        check_elem(target, eb)
        _embed_check_pair(source, target, a, b, ea, eb)
        checked += 1
    name = getattr(rule, "__name__", "rule")
    return Embedding(source, target, rule, f"rule:{name}", sample_checked=checked)


def embed_inclusion(source: OrderSpec, target: OrderSpec, **kw) -> Embedding:
    """The identity-style inclusion left n -> left n (natural parts align)."""
    def inclusion(x):
        return x
    return embed_base(source, target, inclusion, **kw)


def embed_into_tail(source: OrderSpec, **kw) -> Embedding:
    """Embed an order into the tail of its own sum: x -> (1, x)."""
    def into_tail(x):
        return BaseElem.right(x)
    return embed_base(source, OmegaPlus(source), into_tail, **kw)


# --- text grammar ----------------------------------------------------------

def format_spec(spec: OrderSpec) -> str:
    if isinstance(spec, Finite):
        return f"fin:{spec.size}"
    if isinstance(spec, Omega):
        return "omega"
    return f"omega+({format_spec(spec.tail)})"


def parse_spec(text: str) -> OrderSpec:
    spec, pos = _parse_spec_at(text, 0)
    if pos != len(text):
        raise ParseError(f"trailing input after order spec: {text[pos:]!r}", col=pos + 1)
    return spec


def _parse_spec_at(text, pos):
    if text.startswith("omega+(", pos):
        inner, pos = _parse_spec_at(text, pos + len("omega+("))
        if pos >= len(text) or text[pos] != ")":
            raise ParseError("expected ')' closing order spec", col=pos + 1)
        return OmegaPlus(inner), pos + 1
    if text.startswith("omega", pos):
        return OMEGA, pos + len("omega")
    if text.startswith("fin:", pos):
        start = pos + len("fin:")
        end = start
        while end < len(text) and text[end].isdigit():
            end += 1
        if end == start:
            raise ParseError("expected a size after 'fin:'", col=start + 1)
        return Finite(int(text[start:end])), end
    raise ParseError(f"expected an order spec at {text[pos:]!r}", col=pos + 1)


def format_elem(e: BaseElem) -> str:
    parts = []
    while e.side == 1:
        parts.append("y.")
        e = e.payload
    parts.append(f"w.{e.payload}")
    return "".join(parts)


def parse_elem(text: str) -> BaseElem:
    e, pos = _parse_elem_at(text, 0)
    if pos != len(text):
        raise ParseError(f"trailing input after element: {text[pos:]!r}", col=pos + 1)
    return e


def _parse_elem_at(text, pos):
    if text.startswith("y.", pos):
        inner, pos = _parse_elem_at(text, pos + 2)
        return BaseElem.right(inner), pos
    if text.startswith("w.", pos):
        pos += 2
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        raise ParseError(f"expected a natural number at {text[pos:]!r}", col=pos + 1)
    return BaseElem.left(int(text[pos:end])), end
