"""Exception types shared across the package.

Every domain error raised by the library derives from WqoError, so the CLI
can report the error name and message and exit with a domain-error code.
"""

from __future__ import annotations


class WqoError(Exception):
    """Base class for all domain errors."""


class InvalidElement(WqoError):
    """An element does not belong to the order it was used with."""


class NotOmegaPlusForm(WqoError):
    """The operation needs an order with an initial copy of the naturals."""


class NotMonotone(WqoError):
    """An embedding violates order preservation.

    Carries the offending source pair in `pair`.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class HeightMismatch(WqoError):
    """Two terms of different heights were compared."""


class InvalidTerm(WqoError):
    """A term violates the carrier invariants.

    Carries the `TermViolation` describing the first offending position.
    """

    def __init__(self, violation):
        super().__init__(str(violation))
        self.violation = violation


class InvalidNode(WqoError):
    """A barrier node is not a strictly increasing tuple of naturals."""


class LengthMismatch(WqoError):
    """Two barrier nodes of different lengths were related."""


class NotTriangleRelated(WqoError):
    """Composition s|_|t requires the triangle relation s <| t."""


class TooShort(WqoError):
    """Nodes of length one have no decomposition."""


class ArityMismatch(WqoError):
    """A product element has the wrong number of natural coordinates."""


class InvalidRelation(WqoError):
    """A finite relation table is not reflexive or not transitive."""


class MissingValue(WqoError):
    """An array is partial on its window."""


class HeightExhausted(WqoError):
    """The transform recursion was pushed past the bottom level."""


class WindowTooSmall(WqoError):
    """The window admits no pair at the top level of the transform."""


class NotDescending(WqoError):
    """A sequence fails strict descent; `index` points at the first offender."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class AlreadyMinimal(WqoError):
    """The canonical descent generator was started from the least term."""


class UnsupportedLeafDescent(WqoError):
    """Canonical descent only steps through leaves in the omega part."""


class ParseError(WqoError):
    """Malformed text input; `line` and `col` locate the problem when known."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" (line {line}, col {col})" if col is not None else f" (line {line})"
        elif col is not None:
            where = f" (col {col})"
        super().__init__(message + where)
