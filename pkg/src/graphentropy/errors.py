"""Exception types shared across the package."""


class GraphEntropyError(Exception):
    """Base class for all package errors."""


class ParseError(GraphEntropyError, ValueError):
    """Malformed input file. Carries the offending 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceeded(GraphEntropyError):
    """A search or LP exceeded its size or work budget."""


class Undetermined(GraphEntropyError):
    """Bounds did not close, so no exact answer can be given."""

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class PrecisionError(GraphEntropyError):
    """Two logarithms in different bases are too close to order reliably."""


class LPError(GraphEntropyError):
    """Internal LP failure, e.g. a certificate that does not verify."""
