from math import gcd

import pytest
from hypothesis import given, strategies as st

from planebranch.curve import CharExponents, Parametrization, generic_parametrization, monomial_parametrization
from planebranch.exact import RatMatrix, TruncatedSeries
from planebranch.moduli import char_classes
from planebranch.resolution import resolve
from planebranch.saito import (Direction, PropertyViolation, attachments, check_combinatorial_properties,
                               delta_p_data, delta_sequence, foliation_mult_identity, n1_from_pair,
                               numbered_dual_tree, p1_formula, p1_table, p_vector, v_vector)

t = TruncatedSeries.monomial
DIAGONAL = Parametrization(t(1), t(1))


def res(*betas, seed=None):
    c = CharExponents(betas)
    return resolve(monomial_parametrization(c) if seed is None else generic_parametrization(c, seed))


def direction_for(d1, d2):
    """A direction realizing (delta_1, delta_2) for a branch tangent to {y=0}."""
    return {
        (0, 1): Direction.none(),
        (1, 1): Direction.x(),
        (1, 2): Direction.y(),
        (2, 2): Direction.xy(),
        (2, 1): Direction((Direction.x().components[0],) + Direction.custom([DIAGONAL]).components),
    }[(d1, d2)]


# -- directions ----------------------------------------------------------------

def test_direction_validation():
    assert len(Direction.xy()) == 2 and Direction.from_name("y").name() == "y"
    with pytest.raises(ValueError):
        Direction.custom([Parametrization(t(2), t(3))])
    with pytest.raises(ValueError):
        Direction.custom([DIAGONAL, Parametrization(t(1), t(1) + t(2))])
    with pytest.raises(ValueError):
        Direction.custom([DIAGONAL, Parametrization(t(1), t(2)), Parametrization(t(2), t(1))])
    with pytest.raises(ValueError):
        Direction.from_name("z")


@pytest.mark.parametrize("name, delta, p", [
    ("none", [0, 1, 2], [1, 1, 0]),
    ("x", [1, 1, 2], [0, 1, 0]),
    ("y", [1, 2, 2], [1, 0, 0]),
    ("xy", [2, 2, 2], [1, 0, 0]),
])
def test_cusp_delta_and_p(name, delta, p):
    r = res(2, 3)
    d = Direction.from_name(name)
    assert delta_sequence(r, d) == delta
    assert p_vector(r, delta) == p


def test_cusp_v_vector():
    r = res(2, 3)
    assert v_vector(r, [0, 1, 2]) == [2, 1, 0]


def test_delta_5_13():
    r = res(5, 13)
    # column 3 of the proximity matrix has a single -1: c3 lies on D2 only
    assert [row[2] for row in r.proximity.tolist()] == [0, -1, 1, 0, 0, 0]
    assert delta_sequence(r, Direction.none()) == [0, 1, 1, 2, 2, 2]


def test_attachments_follow_the_trace():
    r = res(2, 3)
    assert attachments(r, Direction.x()) == [1]
    assert attachments(r, Direction.y()) == [2]


def test_custom_direction_equals_axis():
    r = res(5, 13, seed=2)
    axis = delta_sequence(r, Direction.y())
    custom = delta_sequence(r, Direction.custom([Parametrization(t(1), TruncatedSeries.zero())]))
    assert axis == custom


# -- property checks -------------------------------------------------------------

def test_cusp_properties_pass():
    r = res(2, 3)
    rep = check_combinatorial_properties(r, [0, 1, 2], [1, 1, 0])
    assert rep.all_pass and rep.prop1 == []


def test_generic_5_13_p_bounded_below():
    r = res(5, 13, seed=0)
    data = delta_p_data(r, Direction.none())
    assert min(data.p) >= -1 and data.report.all_pass


def test_case_a_flagged():
    r = res(3, 7)
    d = direction_for(2, 1)
    data = delta_p_data(r, d)
    assert data.delta[:2] == (2, 1)
    assert data.p[0] == -1 == p1_table(3, 7, 2, 1)
    assert data.report.prop1 == [(1, "a")] and data.report.all_pass


def test_strict_mode_raises_on_violation():
    r = res(2, 3)
    with pytest.raises(PropertyViolation) as exc:
        check_combinatorial_properties(r, [0, 1, 2], [-2, 1, 0], strict=True)
    assert exc.value.prop == "1" and exc.value.index == 1
    rep = check_combinatorial_properties(r, [0, 1, 2], [-1, 1, -1])
    assert not rep.prop2 and not rep.all_pass


# -- table of first entries ---------------------------------------------------------

def test_table_examples():
    assert n1_from_pair(3, 5) == 3 and p1_table(3, 5, 0, 1) == 1
    assert n1_from_pair(3, 7) == 2 and p1_table(3, 7, 2, 1) == -1
    with pytest.raises(ValueError):
        p1_table(4, 6, 0, 1)
    with pytest.raises(ValueError):
        p1_table(3, 9, 0, 1)


def test_table_matches_expanded_formula():
    for p in range(2, 30):
        for q in range(p + 1, 60):
            if gcd(p, q) != 1:
                continue
            for d1, d2 in [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)]:
                assert p1_table(p, q, d1, d2) == p1_formula(p, q, d1, d2), (p, q, d1, d2)


@pytest.mark.parametrize("d1, d2", [(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)])
def test_table_matches_trace(d1, d2):
    d = direction_for(d1, d2)
    for p in range(2, 9):
        for q in range(p + 1, 24):
            if gcd(p, q) != 1:
                continue
            r = res(p, q, seed=p * q)
            delta = delta_sequence(r, d)
            assert delta[:2] == [d1, d2]
            assert p_vector(r, delta)[0] == p1_table(p, q, d1, d2), (p, q)


# -- numbered tree and identity --------------------------------------------------------

def test_numbered_tree_cusp():
    r = res(2, 3)
    tree = numbered_dual_tree(r, Direction.none(), [1, 1, 0])
    assert tree.numbering == (1, 1, 0) and tree.curve_attach == 3 and tree.last_dicritical
    dot = tree.to_dot()
    assert "S -- D3" in dot and dot.count(" -- ") == 3


def test_numbered_tree_counts_direction_attachments():
    r = res(2, 3)
    data = delta_p_data(r, Direction.xy())
    tree = numbered_dual_tree(r, Direction.xy(), data.p)
    assert tree.numbering == (2, 1, 0) and tree.direction_attach == (1, 2)


def test_numbered_tree_5_13():
    r = res(5, 13)
    data = delta_p_data(r, Direction.none())
    tree = numbered_dual_tree(r, Direction.none(), data.p)
    assert tree.N == 6 and "inf" not in tree.numbering and data.report.all_pass


def test_numbered_tree_infinity():
    r = res(3, 7)
    d = direction_for(2, 1)
    data = delta_p_data(r, d)
    tree = numbered_dual_tree(r, d, data.p)
    assert tree.numbering[0] == "inf" and tree.rule_numbering[0] == -1 + 2
    inf = {i + 1 for i, v in enumerate(tree.numbering) if v == "inf"}
    assert not any(a in inf and b in inf for a, b in tree.edges)
    assert 'label="D1: inf"' in tree.to_dot()


def test_foliation_identity_examples():
    r = res(2, 3)
    assert foliation_mult_identity(r, [0, 1, 2], [1, 1, 0]) == (1, 1, True)
    r = res(8, 20, 30, 35, seed=0)
    data = delta_p_data(r, Direction.none())
    assert foliation_mult_identity(r, data.delta, data.p) == (4, 4, True)
    data = delta_p_data(r, Direction.xy())
    assert foliation_mult_identity(r, data.delta, data.p) == (5, 5, True)


def test_foliation_identity_needs_a_singular_branch():
    r = resolve(Parametrization(t(1), t(2)))
    with pytest.raises(ValueError):
        foliation_mult_identity(r, [], [])


# -- property regression -----------------------------------------------------------------

CLASSES = [c for c in char_classes(8, 60) if not c.is_smooth]
DIRECTIONS = [Direction.none(), Direction.x(), Direction.y(), Direction.xy(), direction_for(2, 1)]


@given(st.sampled_from(CLASSES), st.sampled_from(DIRECTIONS), st.integers(0, 10 ** 6))
def test_properties_hold(c, d, seed):
    r = resolve(generic_parametrization(c, seed))
    data = delta_p_data(r, d)
    assert data.report.all_pass, data.report.violations
    assert data.p[-1] == 0
    assert data.delta[0] == len(d) and all(v in (1, 2) for v in data.delta[1:])
    assert [int(v) for v in RatMatrix(r.proximity_inverse.tolist()) @ list(data.p)] == list(data.v)
    assert foliation_mult_identity(r, data.delta, data.p)[2]
    for i, case in data.report.prop1:
        assert case in ("a", "b")
