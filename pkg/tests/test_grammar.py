from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from planebranch.exact import BivariatePoly, TruncatedSeries
from planebranch.grammar import (ParseError, parse_char, parse_equation, parse_int_list, parse_one_form,
                                 parse_pairs, parse_pairs_char, parse_param, parse_polynomial,
                                 parse_semigroup_char)
from planebranch.saito import OneForm

x, y = BivariatePoly.x(), BivariatePoly.y()


def test_polynomial_basics():
    assert parse_polynomial("y^6-x^7+x^4*y^4") == y ** 6 - x ** 7 + x ** 4 * y ** 4
    assert parse_polynomial("5/3*x^4 - (x+y)^2") == Fraction(5, 3) * x ** 4 - (x + y) ** 2
    assert parse_polynomial("-x") == -x


def test_equation_sides():
    assert parse_equation("y^2 = x^3") == y ** 2 - x ** 3


@pytest.mark.parametrize("text, fragment", [
    ("y^2-x^3+1", "does not vanish"),
    ("x - x", "identically zero"),
])
def test_equation_rejections(text, fragment):
    with pytest.raises(ParseError, match=fragment):
        parse_equation(text)


@pytest.mark.parametrize("text, pos", [("y^2 - z", 6), ("x^y", 2), ("x/(y)", 1), ("x +", 3), ("x $ y", 2)])
def test_error_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text)
    assert info.value.position == pos
    assert "^" in str(info.value)


def test_param():
    p = parse_param("x=t^2; y=t^3+t^5+O(t^9)")
    assert p.x == TruncatedSeries({2: 1})
    assert p.y == TruncatedSeries({3: 1, 5: 1}, 9)
    assert p.truncation_order == 9
    assert parse_param("y=t^3; x=t^2;", trunc=7).truncation_order == 7
    assert parse_param("x=t^2; y=t^3").truncation_order is None


@pytest.mark.parametrize("text", ["x=t^2", "x=t^2; x=t^3", "x=1+t; y=t", "z=t; y=t", "x=t^2; y=t^3*s"])
def test_param_rejections(text):
    with pytest.raises(ParseError):
        parse_param(text)


def test_lists_and_classes():
    assert parse_int_list("[5, 13]") == [5, 13]
    assert parse_pairs("(2,5),(2,15)") == [(2, 5), (2, 15)]
    assert parse_char("4,6,7").betas == (4, 6, 7)
    assert parse_pairs_char("(2,5),(2,15)").betas == (4, 10, 15)
    assert parse_semigroup_char("4,6,13").betas == (4, 6, 7)
    with pytest.raises(ParseError, match="not the semigroup"):
        parse_semigroup_char("8,20,30,35")
    with pytest.raises(ParseError):
        parse_char("4,6")


def test_one_form():
    w = parse_one_form("6*x*dy - 7*y*dx")
    assert (w.P, w.Q) == (-7 * y, 6 * x)
    with pytest.raises(ParseError, match="linear"):
        parse_one_form("x*dx*dy")


coeff = st.fractions(min_value=-20, max_value=20, max_denominator=7)
polys = st.dictionaries(st.tuples(st.integers(0, 6), st.integers(0, 6)), coeff, max_size=6).map(BivariatePoly)


@given(polys)
def test_polynomial_round_trip(f):
    assert parse_polynomial(str(f)) == f


@given(polys, polys)
def test_one_form_round_trip(P, Q):
    w = OneForm.from_PQ(P, Q)
    assert parse_one_form(str(w)) == w
