from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from planebranch.exact import (BivariatePoly, RatMatrix, TruncatedSeries, TruncationError, kernel_basis,
                               series_order, substitute, sylvester_resultant)

x, y = BivariatePoly.x(), BivariatePoly.y()
t = TruncatedSeries.monomial


# -- series ---------------------------------------------------------------------

def test_series_order_examples():
    assert series_order(TruncatedSeries({4: 1, 14: 1}, 40)) == 4
    assert series_order(TruncatedSeries.zero(40)) is None
    assert series_order(TruncatedSeries({20: 1, 30: 1, 35: 1}, 40)) == 20


def test_series_drops_terms_beyond_truncation():
    s = TruncatedSeries({1: 1, 5: 2}, 5)
    assert s.terms == ((1, Fraction(1)),)
    assert s.trunc == 5


def test_coefficient_beyond_truncation_raises():
    s = TruncatedSeries({1: 1}, 5)
    assert s.coefficient(3) == 0
    with pytest.raises(TruncationError, match="increase truncation"):
        s.coefficient(5)


def test_order_or_raise_on_unknown_series():
    with pytest.raises(TruncationError):
        TruncatedSeries.zero(10).order_or_raise()


def test_product_truncation_rule():
    a = TruncatedSeries({2: 1}, 10)
    b = TruncatedSeries({3: 1}, 8)
    # min(10 + 3, 8 + 2)
    assert (a * b).trunc == 10
    assert (a * t(3)).trunc == 13


def test_inverse_and_division():
    u = TruncatedSeries({0: 1, 1: 1}, 12)
    inv = u.inverse()
    assert (u * inv).truncate(12) == TruncatedSeries.constant(1, 12)
    s = TruncatedSeries({3: 2, 4: 2}, 12)
    assert (s / TruncatedSeries({1: 1, 2: 1}, 12)).coefficient(2) == 2


def test_inverse_of_non_unit_fails():
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries({1: 1}, 5).inverse()


def test_nth_root_and_reversion():
    u = TruncatedSeries({0: 1, 1: 3, 2: 1}, 15)
    r = u.nth_root_unit(3)
    assert (r ** 3).truncate(15) == u
    s = TruncatedSeries({1: 1, 2: 1, 5: -2}, 15)
    assert s.compose(s.reversion()).truncate(15) == TruncatedSeries({1: 1}, 15)


def test_derivative_shifts_truncation():
    s = TruncatedSeries({2: 3, 4: 1}, 6)
    d = s.derivative()
    assert d.trunc == 5
    assert d.coeffs() == {1: 6, 3: 4}


def test_str_grammar():
    assert str(TruncatedSeries({3: 1, 5: Fraction(2, 3)}, 9)) == "t^3 + 2/3*t^5 + O(t^9)"


# -- polynomials -------------------------------------------------------------------

def test_substitute_examples():
    assert substitute(y ** 5 - x ** 13, t(5), t(13)).is_zero
    s = substitute(y, t(8), TruncatedSeries({20: 1, 30: 1, 35: 1}))
    assert s.coeffs() == {20: 1, 30: 1, 35: 1}
    assert substitute(y ** 2 - x ** 3, t(2), t(3)).is_zero


def test_poly_basics():
    f = y ** 6 - x ** 7 + x ** 4 * y ** 4
    assert f.valuation() == 6
    assert f.total_degree() == 8
    assert f.diff(0) == -7 * x ** 6 + 4 * x ** 3 * y ** 4
    assert f.jet(6) == y ** 6
    assert str(f) == "y^6 - x^7 + x^4*y^4"


def test_divmod_exact():
    f = y ** 2 - x ** 3
    q, r = ((x + y) * f).divmod_exact(f)
    assert q == x + y and r.is_zero
    q, r = (x * f + 1).divmod_exact(f)
    assert not r.is_zero


# -- matrices ----------------------------------------------------------------------

def test_kernel_basis_examples():
    assert kernel_basis(RatMatrix.identity(3)) == []
    assert kernel_basis([[1, -1]]) == [[1, 1]]
    assert len(kernel_basis(RatMatrix.zeros(2, 3))) == 3


@pytest.mark.parametrize("method", ["fraction", "modular"])
def test_kernel_methods_agree_on_fixed_matrix(method):
    M = [[1, 2, 3, 4], [2, 4, 6, 8], [1, 0, 1, 0]]
    basis = kernel_basis(M, 4, method)
    assert basis == [[-1, -1, 1, 0], [0, -2, 0, 1]]


def test_matrix_inverse_is_exact():
    M = RatMatrix([[2, 1], [1, 1]])
    assert M @ M.inverse() == RatMatrix.identity(2)
    with pytest.raises(ZeroDivisionError):
        RatMatrix([[1, 2], [2, 4]]).inverse()


# -- resultants --------------------------------------------------------------------

@pytest.mark.parametrize("P, Q, expected", [
    ([x, 0, -1], [y, 0, 0, -1], y ** 2 - x ** 3),
    ([x, -1], [y, -1], y - x),
    ([x] + [0] * 5 + [-1], [y] + [0] * 6 + [-1], y ** 6 - x ** 7),
])
def test_resultant_implicitizes(P, Q, expected):
    r = sylvester_resultant(P, Q)
    assert r == expected or r == -expected


def test_resultant_rejects_zero_leading_coefficient():
    with pytest.raises(ValueError):
        sylvester_resultant([x, 0], [y, -1])


# -- properties ----------------------------------------------------------------------

fracs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
series = st.builds(lambda d, T: TruncatedSeries(d, T),
                   st.dictionaries(st.integers(0, 8), fracs, max_size=5), st.integers(4, 12))
polys = st.builds(BivariatePoly, st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), fracs, max_size=5))


@given(series, series, series)
def test_series_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * (b + c)).agrees_with(a * b + a * c)
    assert a * b == b * a


@given(polys, polys, polys)
def test_poly_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys, polys, st.integers(1, 3), st.integers(1, 3), st.integers(6, 14))
def test_substitute_is_a_ring_homomorphism(f, g, p, q, T):
    sx = TruncatedSeries({p: 1, p + 1: 2}, T)
    sy = TruncatedSeries({q: 1, q + 2: -1}, T)
    lhs = substitute(f * g, sx, sy)
    rhs = substitute(f, sx, sy) * substitute(g, sx, sy)
    assert lhs.agrees_with(rhs)


@given(st.lists(st.lists(st.integers(-4, 4), min_size=5, max_size=5), min_size=1, max_size=5))
def test_kernel_vectors_annihilate_and_rank_nullity(rows):
    M = RatMatrix(rows)
    basis = kernel_basis(M)
    for v in basis:
        assert all(c == 0 for c in M @ v)
    assert M.rank() + len(basis) == 5


@given(st.integers(-3, 3).filter(bool), st.integers(1, 3), st.integers(1, 4))
def test_resultant_vanishes_at_common_roots(r, a, b):
    # x - t^a and y - t^b share the root t = r at (r^a, r^b)
    P = [x] + [0] * (a - 1) + [-1]
    Q = [y] + [0] * (b - 1) + [-1]
    res = sylvester_resultant(P, Q)
    assert res.evaluate(Fraction(r) ** a, Fraction(r) ** b) == 0
