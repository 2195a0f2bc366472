"""Exception hierarchy.

``ValidationError`` subclasses signal mathematically invalid input (CLI exit
code 1); ``UsageError`` subclasses signal malformed requests (exit code 2).
"""

from __future__ import annotations


class TaccatError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(TaccatError):
    pass


class UsageError(TaccatError):
    pass


class RingMismatch(UsageError):
    pass


class OrderMismatch(UsageError):
    pass


class ParseError(UsageError):
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


class UndefinedName(ParseError):
    pass


class DuplicateName(ParseError):
    pass


class NotInMSquared(ValidationError):
    def __init__(self, index: int, poly):
        self.index = index
        super().__init__(f"f{index + 1} = {poly} has a constant or linear term")


class NotRegularSequence(ValidationError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"f{index + 1} is a zero divisor modulo its predecessors")


class ShapeMismatch(ValidationError):
    pass


class SquareNotZero(ValidationError):
    def __init__(self, degree: int, name: str | None = None):
        self.degree = degree
        label = f"complex {name}: " if name else ""
        super().__init__(f"{label}d[{degree - 1}]*d[{degree}] != 0 at degree {degree}")


class NotAChainMap(ValidationError):
    def __init__(self, degree: int, name: str | None = None):
        self.degree = degree
        label = f"map {name}: " if name else ""
        super().__init__(f"{label}chain-map identity fails at degree {degree}")


class NotArtinian(UsageError):
    pass


class NotTotallyAcyclic(ValidationError):
    pass


class InternalError(TaccatError):
    pass


class CommutationFailure(ValidationError):
    pass


class ConventionMismatch(ValidationError):
    pass


class ZeroPoint(UsageError):
    pass


class StabilizationNotDetected(TaccatError):
    pass


class WindowUnsupported(UsageError):
    pass
