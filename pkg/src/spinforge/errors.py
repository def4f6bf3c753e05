"""Exception hierarchy shared by every spinforge module."""

from __future__ import annotations


class SpinforgeError(Exception):
    """Base class for all workbench errors."""


class ZeroDenominator(SpinforgeError, ValueError):
    pass


class DivisionByZero(SpinforgeError, ZeroDivisionError):
    pass


class NotRepresentable(SpinforgeError, ValueError):
    """A value (typically a square root) falls outside Q(sqrt2, sqrt3)."""


class NormOutsideField(NotRepresentable):
    pass


class DimensionMismatch(SpinforgeError, ValueError):
    pass


class SameParticle(SpinforgeError, ValueError):
    pass


class ZeroState(SpinforgeError, ValueError):
    pass


class NotNormalized(SpinforgeError, ValueError):
    pass


class LabelPatternMismatch(SpinforgeError, ValueError):
    pass


class GridMismatch(SpinforgeError, ValueError):
    pass


class ParseError(SpinforgeError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class DuplicateTerm(ParseError):
    pass
