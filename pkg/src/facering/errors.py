"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class FaceRingError(ValueError):
    """Base class for all errors raised by facering."""


class EmptyInput(FaceRingError):
    pass


class EmptySelection(FaceRingError):
    pass


class DimensionOutOfRange(FaceRingError):
    pass


class NotAFace(FaceRingError):
    pass


class UnknownVertex(FaceRingError):
    pass


class TooManyVertices(FaceRingError):
    pass


class DegenerateComplex(FaceRingError):
    """The complex is {emptyset} or a full simplex (zero face ideal)."""


class NotCM(FaceRingError):
    pass


class NotAMatroid(FaceRingError):
    pass


class NotGorensteinStar(FaceRingError):
    pass


class WrongDimension(FaceRingError):
    pass


class MalformedSequence(FaceRingError):
    pass


class ParameterOutOfRange(FaceRingError):
    pass


class ParseError(FaceRingError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class TheoremViolation(AssertionError):
    """Raised by ``Verdict.require`` when an applicable check fails.

    ``detail`` carries both sides of the failed comparison.
    """

    def __init__(self, name: str, detail: dict):
        self.name = name
        self.detail = detail
        super().__init__(f"{name} failed: {detail}")
