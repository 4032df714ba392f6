"""Exception types raised across the package."""

from __future__ import annotations


class SkewSmoothError(Exception):
    """Base class for all package errors."""


class MismatchedArityError(SkewSmoothError, ValueError):
    """A word or polynomial references a generator index outside 1..n."""


class ZeroQuadCoeffError(SkewSmoothError, ValueError):
    """A quadratic coefficient that must be invertible is zero."""


class NonDiagonalTailError(SkewSmoothError, ValueError):
    """A linear tail has support outside the relation's own pair of generators."""


class ZeroSlopeError(SkewSmoothError, ValueError):
    """An affine map has a zero slope on some generator."""


class ZeroLambdaError(SkewSmoothError, ValueError):
    """A forward diffusion coefficient lambda_ij (i < j) is zero."""


class SingularMatrixError(SkewSmoothError, ValueError):
    """A matrix required to be invertible has zero determinant."""


class IndexRangeError(SkewSmoothError, ValueError):
    """A combinatorial index is outside its admissible range."""


class BadCharacteristicError(SkewSmoothError, ValueError):
    """The coefficient field has characteristic 2 or 3, or a bad modulus."""


class PresentationSyntaxError(SkewSmoothError, ValueError):
    """Parse failure in an algebra file; carries line and column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}" if line else message)
        self.line = line
        self.column = column


class DuplicatePairError(PresentationSyntaxError):
    """The same generator pair (or coefficient slot) is defined twice."""
