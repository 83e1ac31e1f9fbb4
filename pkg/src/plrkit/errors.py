"""Exception hierarchy for the partial-Latin-rectangle toolkit.

Every error raised by this package derives from :class:`PlrError`, so callers
can catch one base class.  The subclasses mirror the failure modes of the
public operations: malformed combinatorial input, inadmissible group elements,
infeasible constraint systems, backend limitations, and resource guards.
"""

from __future__ import annotations


class PlrError(Exception):
    """Base class for all errors raised by plrkit."""


class IndexOutOfRange(PlrError):
    """An index (row, column, symbol, or cell id) exceeds the stated bounds."""


class LatinViolation(PlrError):
    """Two entries clash in a row, column, or cell.

    Attributes
    ----------
    first, second:
        The clashing entry triples, exposed for diagnostics.
    """

    def __init__(self, message: str, first=None, second=None):
        super().__init__(message)
        self.first = first
        self.second = second


class DimensionMismatch(PlrError):
    """A permutation triple or operand does not match the object's dimensions."""


class InvalidParastrophe(PlrError):
    """The requested coordinate permutation is not admissible for these dims."""


class WeightMismatch(PlrError):
    """Two count tuples that must share a total weight do not."""


class LengthMismatch(PlrError):
    """A count tuple's length does not match the corresponding dimension."""


class NotSquare(PlrError):
    """An operation defined only for square arrays received a non-square one."""


class UnknownStrategy(PlrError):
    """An unrecognised decomposition strategy name was supplied."""


class RowMismatch(PlrError):
    """Row-indexed pieces passed to an assembly do not cover rows 1..r exactly."""


class InfeasibleSystem(PlrError):
    """The constraint system admits no solution (conflicting forced variables)."""


class UnsupportedConstraint(PlrError):
    """The selected backend cannot handle a constraint kind present in the system."""


class LimitExceeded(PlrError):
    """An enumeration exceeded the caller-supplied bound."""


class BackendUnavailable(PlrError):
    """The requested counting backend cannot serve this request."""


class MissingRho(PlrError):
    """A per-structure count table lacks a required structure triple."""


class SizeOutOfRange(PlrError):
    """A closed-form formula was requested outside its supported size range."""


class NonIntegerResult(PlrError):
    """An exact division failed, signalling a transcription bug in a formula."""


class NotSeminetSource(PlrError):
    """The array is not a valid seminet source; the message names the failed predicate."""


class RankOutOfRange(PlrError):
    """The requested census point rank exceeds the supported range."""
