"""Exception types shared across the package."""


class InputError(ValueError):
    """Bad caller-supplied data: dimension mismatch, out-of-range parameter,
    chart mismatch, malformed document."""


class DegeneratePresentationError(InputError):
    """A frame or coframe failed its declared pointwise rank at a sample point."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class ParseError(InputError):
    """Syntax or type error in the input language, with 1-based position."""

    def __init__(self, message, line, column):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


class ConsistencyError(RuntimeError):
    """An internal structural guarantee failed.

    Raised when a quantity the theory forces (a coefficient that must be
    constant, a diagonal entry that must vanish) comes out otherwise. This
    signals a bug in the implementation, never bad input.
    """
