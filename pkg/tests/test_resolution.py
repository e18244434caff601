from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from planebranch.curve import (CharExponents, Parametrization, char_exponents, conductor, generic_parametrization,
                               monomial_parametrization, semigroup_from_char)
from planebranch.exact import IntMatrix, RatMatrix, TruncatedSeries, TruncationError
from planebranch.moduli import char_classes
from planebranch.resolution import (BlowupStep, BranchState, blowup_once, intersection_from_bookkeeping,
                                    proximity_inverse, resolve, trace)

t = TruncatedSeries.monomial

PROX_5_13 = [
    [1, -1, 0, 0, 0, 0],
    [0, 1, -1, -1, 0, 0],
    [0, 0, 1, -1, -1, 0],
    [0, 0, 0, 1, -1, -1],
    [0, 0, 0, 0, 1, -1],
    [0, 0, 0, 0, 0, 1],
]
INV_5_13 = [
    [1, 1, 1, 2, 3, 5],
    [0, 1, 1, 2, 3, 5],
    [0, 0, 1, 1, 2, 3],
    [0, 0, 0, 1, 1, 2],
    [0, 0, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 1],
]


def mono(*betas):
    return monomial_parametrization(CharExponents(betas))


# -- single blow-ups ------------------------------------------------------------

def test_blowup_once_examples():
    s, step = blowup_once(BranchState(t(8), t(20) + t(30) + t(35)), 1)
    assert (s.X, s.Y) == (t(8), t(12) + t(22) + t(27))
    assert s.divisors() == (1,) and step.center_divisors == () and step.strict_mult == 8
    s, _ = blowup_once(BranchState(t(2), t(3)), 1)
    assert (s.X, s.Y) == (t(2), t(1))
    s, _ = blowup_once(BranchState(t(5), t(13)), 1)
    assert (s.X, s.Y) == (t(5), t(8))


def test_blowup_translation_drops_old_divisor():
    # the old divisor {y=0} survives the x-chart only when the translation is zero
    s, _ = blowup_once(BranchState(t(1), t(1) + t(2), (("y", 7),)), 8)
    assert s.divisors() == (8,)
    s, step = blowup_once(BranchState(t(1), t(2), (("y", 7),)), 8)
    assert step.translation == 0 and s.divisors() == (7, 8)


def test_blowup_needs_enough_truncation():
    with pytest.raises(TruncationError, match="increase truncation"):
        trace(Parametrization(t(4), TruncatedSeries({6: 1}, 7)))


# -- resolution records ---------------------------------------------------------------

def test_resolve_5_13():
    r = resolve(mono(5, 13))
    assert r.N == 6
    assert r.strict_mults == [5, 5, 3, 2, 1, 1]
    assert r.proximity.tolist() == PROX_5_13
    assert r.proximity_inverse.tolist() == INV_5_13
    assert r.edges == ((1, 2), (2, 4), (3, 5), (4, 6), (5, 6))
    assert r.final_attach == 6


def test_resolve_cusp():
    r = resolve(mono(2, 3))
    assert r.N == 3
    assert r.strict_mults == [2, 1, 1]
    assert r.reduced_total_mults == [2, 2, 3]
    assert r.proximity.tolist() == [[1, -1, -1], [0, 1, -1], [0, 0, 1]]
    assert r.proximity_inverse.tolist() == [[1, 1, 2], [0, 1, 1], [0, 0, 1]]
    assert [r.intersection[i, i] for i in range(3)] == [-3, -2, -1]
    assert r.edges == ((1, 3), (2, 3))


def test_resolve_2_5_trace():
    r = resolve(mono(2, 5))
    assert r.N == 4
    assert r.proximity.tolist() == [[1, -1, 0, 0], [0, 1, -1, -1], [0, 0, 1, -1], [0, 0, 0, 1]]


def test_reduced_total_sequence_of_the_four_exponent_example():
    for seed in range(3):
        r = resolve(generic_parametrization(CharExponents((8, 20, 30, 35)), seed))
        assert r.reduced_total_mults[:7] == [8, 9, 5, 6, 5, 5, 3]
        assert r.N == 12


def test_smooth_curve_needs_no_blow_up():
    r = resolve(Parametrization(t(1), t(3)))
    assert r.N == 0 and r.final_attach is None


def test_single_step_intersection():
    assert intersection_from_bookkeeping([BlowupStep(1, "x", (), 1, Fraction(0))]).tolist() == [[-1]]


def test_intersection_sign_convention():
    for betas in [(2, 3), (5, 13), (4, 6, 7)]:
        assert resolve(mono(*betas)).sign_matches == ("-E E^T",)


def test_components_and_dot():
    r = resolve(mono(2, 3))
    comps = r.components()
    assert [(c.index, c.self_intersection, c.neighbors) for c in comps] == [(1, -3, (3,)), (2, -2, (3,)), (3, -1, (1, 2))]
    dot = r.to_dot()
    assert dot.startswith("graph dual {") and "D1 -- D3;" in dot and "S -- D3" in dot


def test_proximity_inverse_rejects_non_triangular():
    with pytest.raises(ValueError):
        proximity_inverse(IntMatrix([[1, 0], [1, 1]]))


def test_parametrizations_of_one_class_resolve_alike():
    c = CharExponents((6, 9, 11))
    runs = [resolve(generic_parametrization(c, s)) for s in range(4)] + [resolve(monomial_parametrization(c))]
    assert len({(r.proximity, r.edges) for r in runs}) == 1


# -- invariants over random classes ---------------------------------------------------

CLASSES = [c for c in char_classes(8, 60) if not c.is_smooth]


def _is_tree(n, edges):
    if len(edges) != n - 1:
        return False
    seen, stack = {1}, [1]
    while stack:
        v = stack.pop()
        for a, b in edges:
            for u, w in ((a, b), (b, a)):
                if u == v and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == n


@given(st.sampled_from(CLASSES), st.integers(0, 10 ** 6))
def test_resolution_invariants(c, seed):
    r = resolve(generic_parametrization(c, seed))
    n = r.N
    E = r.proximity.tolist()
    inv = r.proximity_inverse.tolist()
    m = r.strict_mults
    # E unit upper triangular with entries in {0, -1}
    for i in range(n):
        assert E[i][i] == 1
        assert all(E[i][j] == 0 for j in range(i))
        assert all(E[i][j] in (0, -1) for j in range(i + 1, n))
    assert RatMatrix(E) @ RatMatrix(inv) == RatMatrix.identity(n)
    assert all(inv[i][j] >= 0 for i in range(n) for j in range(n))
    # proximity equality: E m = e_N
    assert [sum(E[i][j] * m[j] for j in range(n)) for i in range(n)] == [0] * (n - 1) + [1]
    # Noether
    assert sum(k * (k - 1) for k in m) == conductor(semigroup_from_char(c))
    assert all(a >= b for a, b in zip(m, m[1:]))
    assert r.reduced_total_mults[0] == c.multiplicity
    assert all(s.reduced_total_mult == s.strict_mult + len(s.center_divisors) for s in r.steps)
    assert all(len(s.center_divisors) <= 2 for s in r.steps)
    # irreducibility: the -1 entries of each row are contiguous after the diagonal
    for i in range(n):
        row = E[i][i + 1:]
        k = row.index(0) if 0 in row else len(row)
        assert all(v == 0 for v in row[k:])
    assert _is_tree(n, r.edges)
    for comp in r.components():
        assert comp.self_intersection == -1 - r.n_row[comp.index - 1]
    assert r.sign_matches == ("-E E^T",)
    assert r.steps[-1].strict_mult == 1 and len(r.steps[-1].center_divisors) == 2
