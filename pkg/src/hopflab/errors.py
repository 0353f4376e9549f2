"""Exception types shared across the package."""

from __future__ import annotations


class HopfLabError(Exception):
    """Base class for every error raised by hopflab."""


class FieldError(HopfLabError):
    pass


class ScalarFormatError(HopfLabError):
    """A scalar literal is malformed or not in canonical form."""


class CompositionError(HopfLabError):
    """Two morphisms were composed across mismatched signatures."""

    def __init__(self, message: str, left=None, right=None):
        super().__init__(message)
        self.left = left
        self.right = right


class NotIdempotentError(HopfLabError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SingularError(HopfLabError):
    def __init__(self, message: str, rank: int | None = None):
        super().__init__(message)
        self.rank = rank


class ParseError(HopfLabError):
    """Syntax error in a morphism expression.

    ``offset`` is 1-based: the position of the offending character, or
    ``len(src) + 1`` when input ended early.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{message} at offset {offset}"
                         + (f" (expected one of: {', '.join(expected)})" if expected else ""))
        self.offset = offset
        self.expected = expected


class TypecheckError(HopfLabError):
    def __init__(self, message: str, subtree=None):
        super().__init__(message)
        self.subtree = subtree


class SignatureMismatch(HopfLabError):
    pass


class PreconditionError(HopfLabError):
    """A construction was applied to an input outside its domain."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class GroupTableError(HopfLabError):
    pass


class InstanceError(HopfLabError):
    """Invalid instance document; ``location`` is a path into the JSON."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
