"""Seeded random generation of elements and terms.

Used by the property tests and the `cnf random` command.  Sequence lengths
follow a geometric distribution with mean `mean_len` capped at `max_len`,
children are generated recursively, and the result is sorted
non-increasing to land in the carrier.  All functions draw from a caller
supplied `random.Random`, so runs are reproducible from a seed.
"""

from __future__ import annotations

import functools
import random

from .base_orders import BaseElem, Finite, Omega, OrderSpec
from .terms import Term, is_zero_term, lex_compare


def random_elem(spec: OrderSpec, rng: random.Random, nat_bound: int = 12) -> BaseElem:
    """A random element of `spec`; side-0 payloads are drawn below
    `nat_bound`."""
    if isinstance(spec, Finite):
        if spec.size == 0:
            raise ValueError("fin:0 has no elements")
        return BaseElem.left(rng.randrange(spec.size))
    if isinstance(spec, Omega):
        return BaseElem.left(rng.randrange(nat_bound))
    if rng.random() < 0.5:
        return BaseElem.left(rng.randrange(nat_bound))
    try:
        return BaseElem.right(random_elem(spec.tail, rng, nat_bound))
    except ValueError:
        return BaseElem.left(rng.randrange(nat_bound))


def _geometric_len(rng, mean_len, max_len):
    stay = mean_len / (mean_len + 1.0)
    k = 0
    while k < max_len and rng.random() < stay:
        k += 1
    return k


def random_term(spec: OrderSpec, height: int, rng: random.Random,
                mean_len: float = 3.0, max_len: int = 8,
                nat_bound: int = 12) -> Term:
    """A random valid term of the given height over `spec`."""
    if height == 0:
        return Term.leaf(random_elem(spec, rng, nat_bound))
    n = _geometric_len(rng, mean_len, max_len)
    children = [
        random_term(spec, height - 1, rng, mean_len, max_len, nat_bound)
        for _ in range(n)
    ]
    children.sort(key=functools.cmp_to_key(lex_compare), reverse=True)
    return Term(height, tuple(children))


def random_nonzero_term(spec: OrderSpec, height: int, rng: random.Random,
                        attempts: int = 100, **kw) -> Term:
    for _ in range(attempts):
        t = random_term(spec, height, rng, **kw)
        if not is_zero_term(t):
            return t
    raise RuntimeError("failed to draw a nonzero term")
