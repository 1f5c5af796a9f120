"""Strictly increasing tuples of naturals and the overlap step relation.

A node of the length-k barrier is a strictly increasing k-tuple.  Two
equal-length nodes are related, s <| t, when t continues s: s_0 < t_0 and
s_{i+1} = t_i for the rest.  For k = 1 this is just s_0 < t_0, so the
length-1 barrier is the naturals under <.  A related pair composes into
the length-(k+1) node s|_|t (s followed by t's last entry), and every node
of length >= 2 splits back uniquely into such a pair.

Node text form: comma-separated naturals, e.g. `1,3,7`.  Pair-per-line
output joins the overlapping halves as `s,|t` (the s half keeps its
trailing comma), e.g. `1,3,|3,7`.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Tuple

from .errors import InvalidNode, LengthMismatch, NotTriangleRelated, ParseError, TooShort


class Node:
    """A validated barrier node; invalid tuples are unrepresentable."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise InvalidNode("a node needs at least one entry")
        prev = -1
        for x in entries:
            if not isinstance(x, int) or x < 0:
                raise InvalidNode(f"entries must be naturals, got {x!r}")
            if x <= prev:
                raise InvalidNode(f"entries must be strictly increasing, got {entries}")
            prev = x
        self.entries = entries

    @classmethod
    def _wrap(cls, entries: Tuple[int, ...]) -> "Node":
        # internal fast path for tuples already known to be valid
        node = object.__new__(cls)
        node.entries = entries
        return node

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if isinstance(other, Node):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"Node({format_node(self)})"


def triangle(s: Node, t: Node) -> bool:
    """The overlap step relation s <| t."""
    a, b = s.entries, t.entries
    if len(a) != len(b):
        raise LengthMismatch(f"cannot relate lengths {len(a)} and {len(b)}")
    return a[0] < b[0] and a[1:] == b[:-1]


def union(s: Node, t: Node) -> Node:
    """Compose a related pair into the node one longer: s plus t's last
    entry.  Requires s <| t."""
    if not triangle(s, t):
        raise NotTriangleRelated(f"{format_node(s)} does not step to {format_node(t)}")
    return Node._wrap(s.entries + (t.entries[-1],))


def split(u: Node) -> Tuple[Node, Node]:
    """The unique related pair composing to `u`: drop the last entry and
    drop the first."""
    if len(u.entries) < 2:
        raise TooShort("nodes of length one do not decompose")
    return Node._wrap(u.entries[:-1]), Node._wrap(u.entries[1:])


def enumerate_window(k: int, window: int) -> Iterator[Node]:
    """All length-k nodes with entries below `window`, lexicographically."""
    if k < 1:
        raise InvalidNode("node length must be >= 1")
    for entries in combinations(range(window), k):
        yield Node._wrap(entries)


def iter_triangle_pairs(k: int, window: int) -> Iterator[Tuple[Node, Node]]:
    """All related pairs of length-k nodes with entries below `window`.

    Enumeration order is lexicographic on (t, s): t runs through the
    window in lexicographic order and, since s is t shifted back by one
    position, only s's first entry varies below t's.
    """
    if k < 1:
        raise InvalidNode("node length must be >= 1")
    for t_entries in combinations(range(window), k):
        head = t_entries[:-1]
        t = Node._wrap(t_entries)
        for s0 in range(t_entries[0]):
            yield Node._wrap((s0,) + head), t


def format_node(node: Node) -> str:
    return ",".join(str(x) for x in node.entries)


def format_pair(s: Node, t: Node) -> str:
    return f"{format_node(s)},|{format_node(t)}"


def parse_node(text: str) -> Node:
    parts = text.split(",")
    entries = []
    for i, part in enumerate(parts):
        part = part.strip()
        if not part.isdigit():
            raise ParseError(f"expected a natural number, got {part!r}", col=i + 1)
        entries.append(int(part))
    try:
        return Node(entries)
    except InvalidNode as exc:
        raise ParseError(str(exc)) from None
