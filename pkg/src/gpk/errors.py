"""Exception types shared across the package."""

from __future__ import annotations


class GpkError(Exception):
    """Base class for every error raised by :mod:`gpk`."""


class LengthMismatch(GpkError, ValueError):
    pass


class TooLarge(GpkError, ValueError):
    pass


class BadIndex(GpkError, IndexError):
    pass


class WrongShape(GpkError, ValueError):
    """A solver was handed an oracle with the wrong (n, m) shape."""


class NotDeterministic(GpkError):
    """No measurement outcome carries probability 1 within tolerance."""


class NotABasis(GpkError, ValueError):
    pass


class PromiseViolated(GpkError):
    """The oracle does not satisfy the promise the solver relies on."""


class NotAffine(PromiseViolated):
    pass


class NotABitDrop(PromiseViolated):
    pass


class TruthTableParseError(GpkError, ValueError):
    """Malformed truth-table text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
