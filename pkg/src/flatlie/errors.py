"""Exception hierarchy shared by every flatlie module."""


class FlatLieError(Exception):
    """Base class for all errors raised by flatlie."""


class DimensionError(FlatLieError, ValueError):
    """Vector or matrix sizes do not match the algebra."""


class ShapeError(FlatLieError, ValueError):
    """A matrix does not have the required shape or symmetry."""


class SingularError(FlatLieError, ArithmeticError):
    """A matrix that must be invertible is singular."""


class ValidationError(FlatLieError, ValueError):
    """Input data violates a structural invariant."""


class PreconditionError(FlatLieError, ValueError):
    """An operation was called outside its hypothesis."""


class ParseError(FlatLieError, ValueError):
    """Manifest text could not be parsed."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line} column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
