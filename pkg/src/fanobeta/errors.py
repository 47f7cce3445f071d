"""Exception types shared across the package.

The CLI maps each class to a fixed exit code, so keep the hierarchy flat.
"""


class FanoBetaError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FanoBetaError, ValueError):
    """Malformed or inconsistent input (exit code 2)."""


class RegimeError(FanoBetaError):
    """A computation left the regime the engine supports (exit code 3).

    Raised e.g. when a Zariski negative part would need support outside the
    exceptional divisor, or when a divisor path never leaves the big cone.
    """


class TableParseError(InputError):
    """A classification table could not be parsed (exit code 4)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfiniteStabilizerError(RegimeError):
    """A stabilizer computation found a positive-dimensional solution family."""


class UnsupportedShapeError(InputError):
    """A quadratic form is not in one of the shapes the solver handles."""
