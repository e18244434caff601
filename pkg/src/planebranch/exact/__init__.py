"""Exact arithmetic substrate: series, polynomials, matrices, resultants."""

from fractions import Fraction

from .series import TruncatedSeries, TruncationError
from .poly import BivariatePoly
from .matrix import IntMatrix, RatMatrix, kernel_basis, kernel_with_pivots, rref_fraction
from .resultant import sylvester_resultant, sylvester_matrix, bareiss_determinant
from .modular import BACKEND as KERNEL_BACKEND

Rational = Fraction


def series_order(s: TruncatedSeries):
    """Minimal exponent with a nonzero coefficient, ``None`` standing for bottom."""
    return s.order()


def substitute(f: BivariatePoly, sx: TruncatedSeries, sy: TruncatedSeries) -> TruncatedSeries:
    return f.substitute(sx, sy)


__all__ = [
    "Rational", "TruncatedSeries", "TruncationError", "BivariatePoly", "IntMatrix", "RatMatrix",
    "kernel_basis", "kernel_with_pivots", "rref_fraction", "sylvester_resultant", "sylvester_matrix",
    "bareiss_determinant", "series_order", "substitute", "KERNEL_BACKEND",
]
