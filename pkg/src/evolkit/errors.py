"""Exception types shared across evolkit."""

from __future__ import annotations


class InvalidInputError(ValueError):
    """Raised when an operation receives arguments outside its contract."""


class DocumentError(InvalidInputError):
    """A malformed algebra document; ``path`` names the offending field."""

    def __init__(self, message: str, path: str = "") -> None:
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)

    @classmethod
    def at(cls, path: str, message: str) -> DocumentError:
        return cls(message, path)


class NumericFailureError(ArithmeticError):
    """Floating-point root iteration did not converge.

    ``best`` holds the last iterate so callers can still inspect it.
    """

    def __init__(self, message: str, best: list[complex]) -> None:
        self.best = list(best)
        super().__init__(message)
