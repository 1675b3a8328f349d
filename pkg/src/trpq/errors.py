"""Exception types shared across the package."""


class TrpqError(Exception):
    """Base class for all errors raised by this package."""


class EmptyIntervalError(TrpqError):
    """An interval construction or normalisation produced the empty set."""


class IntervalDomainError(TrpqError):
    """An interval lies outside the bounding interval it must be contained in."""


class GraphParseError(TrpqError):
    """A graph document could not be parsed or validated."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class QueryParseError(TrpqError):
    """A query string could not be parsed."""

    def __init__(self, message, position=None):
        self.position = position
        where = f" (at position {position})" if position is not None else ""
        super().__init__(message + where)


class ModeError(TrpqError):
    """A value of the wrong temporal mode (discrete vs dense) was supplied."""


class DenseInfeasibleError(TrpqError):
    """The requested representation cannot be finite over dense time."""


class FixpointLimitError(TrpqError):
    """Unbounded repetition did not reach a fixpoint within the iteration cap."""


class MinimizeGuardError(TrpqError):
    """An instance is too large for the brute-force exact minimizer."""


class InvalidTupleError(TrpqError):
    """A compact tuple violates its validity condition."""
