"""Exception types raised by logitdyn."""


class LogitDynError(Exception):
    """Base class for all library errors."""


class InvalidInputError(LogitDynError, ValueError):
    """An input value violates its domain invariants (non-finite, off-simplex)."""


class InvalidParameterError(LogitDynError, ValueError):
    """A scalar parameter is outside its admissible range."""


class ShapeError(LogitDynError, ValueError):
    """Array lengths or arities do not agree."""
