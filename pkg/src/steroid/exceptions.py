"""Exception hierarchy shared by the tensor, linear-algebra and CLI layers."""


class SteroidError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(SteroidError, ValueError):
    """Array dimensions do not match what an operation requires."""


class OrderError(ShapeError):
    """Tensor order is not acceptable (e.g. odd order for a square reshape)."""


class ConstructionError(SteroidError, ValueError):
    """Conflicting values were supplied for one permutation orbit."""


class SymmetryError(SteroidError, ValueError):
    """A tensor or matrix that must be symmetric is not.

    Attributes
    ----------
    violation : float
        Largest absolute difference between two entries of one orbit.
    index_pair : tuple of tuple of int or None
        Two (1-based) multi-indices realising ``violation``.
    """

    def __init__(self, message, violation=None, index_pair=None):
        super().__init__(message)
        self.violation = violation
        self.index_pair = index_pair


class NumericError(SteroidError, ArithmeticError):
    """Non-finite input reached a numerical kernel."""


class ParseError(SteroidError, ValueError):
    """A tensor or decomposition file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
