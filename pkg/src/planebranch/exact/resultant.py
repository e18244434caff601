"""Sylvester resultants for eliminating a parameter from polynomial pairs."""

from __future__ import annotations

from typing import List, Sequence, Union

from .poly import BivariatePoly

Coeff = Union[BivariatePoly, int]


def _normalize(P: Sequence[Coeff]) -> List[BivariatePoly]:
    return [c if isinstance(c, BivariatePoly) else BivariatePoly.constant(c) for c in P]


def sylvester_matrix(P: Sequence[Coeff], Q: Sequence[Coeff]) -> List[List[BivariatePoly]]:
    """Sylvester matrix of ``P = sum P[k] t^k`` and ``Q = sum Q[k] t^k``.

    Raises ``ValueError`` when a leading coefficient is zero.
    """
    P, Q = _normalize(P), _normalize(Q)
    if not P or not Q or P[-1].is_zero or Q[-1].is_zero:
        raise ValueError("degenerate input: zero leading coefficient")
    m, n = len(P) - 1, len(Q) - 1
    size = m + n
    zero = BivariatePoly()
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(P)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(Q)):
            row[i + k] = c
        rows.append(row)
    return rows


def bareiss_determinant(M: List[List[BivariatePoly]]) -> BivariatePoly:
    """Fraction-free determinant over the polynomial ring."""
    n = len(M)
    if n == 0:
        return BivariatePoly.constant(1)
    A = [list(row) for row in M]
    sign = 1
    prev = BivariatePoly.constant(1)
    for k in range(n - 1):
        if A[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not A[i][k].is_zero), None)
            if swap is None:
                return BivariatePoly()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]).exact_div(prev)
        prev = A[k][k]
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_resultant(P: Sequence[Coeff], Q: Sequence[Coeff]) -> BivariatePoly:
    """Resultant of two polynomials in ``t`` with coefficients in ``Q[x, y]``."""
    return bareiss_determinant(sylvester_matrix(P, Q))
