"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input (self-loop, out-of-range endpoint)."""


class FormatError(ValueError):
    """A graph or coloring text file could not be parsed."""


class PreconditionError(ValueError):
    """An algorithm was called on a graph outside its domain.

    ``reason`` is a short machine-readable name such as ``"bridge"`` or
    ``"disconnected"``.
    """

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)


class VerificationFailure(RuntimeError):
    """A constructed coloring did not pass rainbow verification.

    ``diagnostic`` is a JSON-serialisable dict describing the failing pair.
    """

    def __init__(self, message, diagnostic=None):
        self.diagnostic = diagnostic or {}
        super().__init__(message)


class RuleConflict(RuntimeError):
    """Two coloring rules tried to assign the same edge."""

    def __init__(self, edge, first, second):
        self.edge = edge
        self.first = first
        self.second = second
        super().__init__(f"edge {edge} assigned by {first!r} and {second!r}")


class BudgetExhausted(RuntimeError):
    """A bounded search or rejection sampler ran out of budget."""


class ColoringError(ValueError):
    """An edge coloring does not fit its graph (missing edge, bad color)."""
