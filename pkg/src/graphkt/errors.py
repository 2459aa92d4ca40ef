"""Exception types shared across the package."""


class GraphError(Exception):
    """Base class for all errors raised by this package."""


class GraphParseError(GraphError):
    """Malformed graph file. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)
        self.line = line


class DomainError(GraphError):
    """Input violates a documented precondition (disconnected graph,
    Betti number too small, contracting a loop, ...)."""


class TheoremViolation(GraphError):
    """An internal cross-check between two independent computations failed.

    This signals a bug in the package, never bad input.
    """
