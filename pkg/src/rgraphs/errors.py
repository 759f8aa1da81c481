"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RGraphError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgument(RGraphError, ValueError):
    """An argument is malformed (bad vertex subset, loop edge, ...)."""


class PreconditionViolation(RGraphError):
    """An operation was called on an input outside its contract.

    ``witness`` optionally carries an object explaining the violation,
    e.g. the graph that failed a check.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidPlan(RGraphError):
    """A lifting plan references edges that are missing or not incident to w_X."""


class BudgetExceeded(RGraphError):
    """A search hit its node budget before reaching a decision."""


class OracleGap(RGraphError):
    """The planar oracle found no (t,r)-PM for a planar r-graph.

    Such an instance would refute the planar hypothesis, so it is carried
    along instead of being swallowed.
    """

    def __init__(self, message: str, instance=None, t: int | None = None, r: int | None = None):
        super().__init__(message)
        self.instance = instance
        self.t = t
        self.r = r


class InternalDefect(RGraphError):
    """A step that is guaranteed to succeed did not; indicates a bug."""


class GraphFormatError(RGraphError, ValueError):
    """Raised when parsing the text graph format fails."""
