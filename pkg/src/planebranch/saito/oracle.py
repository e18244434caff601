"""Exact linear-algebra oracle for minimal valuations in the Saito module.

A 1-form ``P dx + Q dy`` is tangent to a branch ``gamma`` when
``gamma^* omega = P(gamma) x' + Q(gamma) y'`` vanishes.  Tangency to an axis of
the direction is built into the shape of the form: ``x | Q`` for ``{x=0}``,
``y | P`` for ``{y=0}``.

Two encodings are provided:

* parametrization route: unknown coefficients of ``P`` and ``Q``, constraints
  "the first ``M`` coefficients of ``gamma^* omega`` vanish".  Only monomials
  whose pull-back starts below ``t^M`` enter.  With ``M`` past a conductor
  threshold, any solution extends to an exactly tangent analytic form with the
  same leading jet, so the minimum is exact.
* equation route: polynomial identity ``P f_y - Q f_x = h f`` in degree ``<= D``.
  It yields an upper bound, non-increasing in ``D``.

Columns are ordered by decreasing degree, so in the canonical RREF kernel basis
every vector has valuation equal to the degree of its free column; the minimal
valuation is the least free-column degree.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..curve import (CharExponents, Parametrization, char_exponents, conductor, generic_parametrization,
                     monomial_parametrization, newton_edge, parametrize_equation, semigroup_from_char)
from ..exact import BivariatePoly, TruncatedSeries, TruncationError, kernel_with_pivots
from .combinatorics import Direction


class BoundExhausted(RuntimeError):
    """No tangent form was found within the given bounds."""


# -- one-forms -----------------------------------------------------------------

CONVENTIONS = ("plain", "x", "y", "xy")


@dataclass(frozen=True)
class OneForm:
    """``A dx + B dy`` with the direction factors of ``convention`` applied.

    ``plain``: ``A dx + B dy``; ``x``: ``A dx + x B dy``; ``y``: ``y A dx + B dy``;
    ``xy``: ``y A dx + x B dy``.
    """

    A: BivariatePoly
    B: BivariatePoly
    convention: str = "plain"

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise ValueError(f"unknown convention {self.convention!r}")

    @property
    def P(self) -> BivariatePoly:
        return self.A.shift(0, 1) if "y" in self.convention else self.A

    @property
    def Q(self) -> BivariatePoly:
        return self.B.shift(1, 0) if "x" in self.convention else self.B

    @classmethod
    def from_PQ(cls, P: BivariatePoly, Q: BivariatePoly, convention: str = "plain") -> "OneForm":
        A = _unshift(P, 0, 1) if "y" in convention else P
        B = _unshift(Q, 1, 0) if "x" in convention else Q
        return cls(A, B, convention)

    @classmethod
    def differential(cls, f: BivariatePoly) -> "OneForm":
        return cls(f.diff(0), f.diff(1))

    def valuation(self) -> Optional[int]:
        vals = [v for v in (self.P.valuation(), self.Q.valuation()) if v is not None]
        return min(vals) if vals else None

    def jet(self, k: int) -> Tuple[BivariatePoly, BivariatePoly]:
        return self.P.jet(k), self.Q.jet(k)

    def pullback(self, gamma: Parametrization) -> TruncatedSeries:
        return (self.P.substitute(gamma.x, gamma.y) * gamma.x.derivative()
                + self.Q.substitute(gamma.x, gamma.y) * gamma.y.derivative())

    def wedge(self, other: "OneForm") -> BivariatePoly:
        """Coefficient of ``dx ^ dy`` in ``self ^ other``."""
        return self.P * other.Q - other.P * self.Q

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm.from_PQ(self.P + other.P, self.Q + other.Q, "plain")

    def scale(self, c) -> "OneForm":
        return OneForm(self.A.scale(c), self.B.scale(c), self.convention)

    def __str__(self) -> str:
        return f"({self.P})*dx + ({self.Q})*dy"


def _unshift(f: BivariatePoly, di: int, dj: int) -> BivariatePoly:
    out = {}
    for (i, j), c in f.items():
        if i < di or j < dj:
            raise ValueError("form does not have the shape required by its convention")
        out[(i - di, j - dj)] = c
    return BivariatePoly(out)


def convention_for(d: Direction) -> str:
    axes = d.axes
    if axes is None:
        raise ValueError("the Saito oracle takes axis directions only ({x=0}, {y=0}); "
                         "move a smooth direction to an axis by a coordinate change first")
    return {frozenset(): "plain", frozenset("x"): "x", frozenset("y"): "y", frozenset("xy"): "xy"}[axes]


def direction_equation(d: Direction) -> BivariatePoly:
    conv = convention_for(d)
    i = 1 if "x" in conv else 0
    j = 1 if "y" in conv else 0
    return BivariatePoly.monomial(i, j)


# -- results -------------------------------------------------------------------

@dataclass
class SaitoResult:
    nu_min: int
    certificate: OneForm
    route: str
    jet_order: Optional[int]
    degree_bound: int
    nu_S_d: int
    exact: bool
    basis: List[Tuple[int, OneForm]] = field(default_factory=list, repr=False)
    cross_check: Optional[dict] = None
    stable: Optional[bool] = None

    def forms_of_valuation(self, nu: int) -> List[OneForm]:
        return [w for k, w in self.basis if k == nu]


# -- parametrization route -------------------------------------------------------

def _monomials(conv: str, px: int, qy: int, M: int, degree_bound: int):
    """Assembled monomials ``(part, i, j)`` whose pull-back starts below ``t^M``."""
    out = []
    for part, shift in (("dx", px - 1), ("dy", qy - 1)):
        for deg in range(degree_bound + 1):
            for i in range(deg + 1):
                j = deg - i
                if part == "dx" and "y" in conv and j < 1:
                    continue
                if part == "dy" and "x" in conv and i < 1:
                    continue
                if i * px + j * qy + shift < M:
                    out.append((part, i, j))
    # decreasing degree, deterministic within a degree
    out.sort(key=lambda m: (-(m[1] + m[2]), m[0], -m[1]))
    return out


def default_bounds(gamma: Parametrization, nu_S_d: int, margin: int = 2) -> Tuple[int, int]:
    """Default ``(jet_order, degree_bound)`` for the parametrization route."""
    c = conductor(semigroup_from_char(char_exponents(gamma)))
    px, qy = gamma.x.order_or_raise(), gamma.y.order_or_raise()
    lo, hi = min(px, qy), max(px, qy)
    tau = -(-nu_S_d // 2)
    M = max(c + (tau + 2) * lo + hi, (tau + 1) * hi + 1) + margin
    return M, -(-M // lo)


def _nu_S_d(gamma_mult: int, d: Direction) -> int:
    return gamma_mult + len(d)


def min_saito_valuation_param(gamma: Parametrization, d: Direction = Direction.none(),
                              degree_bound: Optional[int] = None, jet_order: Optional[int] = None,
                              method: str = "auto") -> SaitoResult:
    conv = convention_for(d)
    nu_S_d = _nu_S_d(gamma.multiplicity, d)
    M0, D0 = default_bounds(gamma, nu_S_d)
    M = jet_order if jet_order is not None else M0
    D = degree_bound if degree_bound is not None else max(D0, -(-M // min(gamma.x.order_or_raise(),
                                                                          gamma.y.order_or_raise())))
    X, Y = gamma.x, gamma.y
    px, qy = X.order_or_raise(), Y.order_or_raise()
    Tneed = M + 1
    if gamma.truncation_order is not None and gamma.truncation_order < Tneed:
        raise TruncationError(f"parametrization truncated at {gamma.truncation_order}; "
                              f"jet order {M} needs {Tneed}; increase truncation")
    cols = _monomials(conv, px, qy, M, D)
    Xt, Yt = X.truncate(M + 1), Y.truncate(M + 1)
    dX, dY = Xt.derivative(), Yt.derivative()
    maxi = max((i for _, i, _ in cols), default=0)
    maxj = max((j for _, _, j in cols), default=0)
    xp = [TruncatedSeries.constant(1)]
    for _ in range(maxi):
        xp.append((xp[-1] * Xt).truncate(M))
    yp = [TruncatedSeries.constant(1)]
    for _ in range(maxj):
        yp.append((yp[-1] * Yt).truncate(M))
    columns = []
    for part, i, j in cols:
        s = (xp[i] * yp[j]).truncate(M) * (dX if part == "dx" else dY)
        s = s.truncate(M)
        columns.append(dict((k, c) for k, c in s.terms if k < M))
    rows = [[col.get(k, Fraction(0)) for col in columns] for k in range(M)]
    rows = [r for r in rows if any(r)]
    pivots, basis = kernel_with_pivots(rows, len(cols), method)
    pset = set(pivots)
    free = [f for f in range(len(cols)) if f not in pset]
    forms = []
    for f, vec in zip(free, basis):
        deg = cols[f][1] + cols[f][2]
        forms.append((deg, _form_from_vector(cols, vec, conv)))
    if not forms:
        raise BoundExhausted("no tangent form within the bounds; raise bounds")
    nu, cert = min(forms, key=lambda t: t[0])
    safe_M, _ = default_bounds(gamma, nu_S_d, margin=0)
    exact = M >= safe_M and D >= -(-M // min(px, qy))
    if nu > nu_S_d // 2 and exact:
        raise BoundExhausted("minimal valuation above the Saito bound; raise bounds")
    return SaitoResult(nu, cert, "parametrization", M, D, nu_S_d, exact, sorted(forms, key=lambda t: t[0]))


def _form_from_vector(cols, vec, conv: str) -> OneForm:
    P, Q = {}, {}
    for (part, i, j), c in zip(cols, vec):
        if c:
            (P if part == "dx" else Q)[(i, j)] = c
    return OneForm.from_PQ(BivariatePoly(P), BivariatePoly(Q), conv)


# -- equation route --------------------------------------------------------------

def min_saito_valuation_equation(f: BivariatePoly, d: Direction = Direction.none(),
                                 degree_bound: Optional[int] = None, method: str = "auto") -> SaitoResult:
    """Polynomial forms of degree ``<= D`` with ``P f_y - Q f_x = h f``; an upper bound."""
    conv = convention_for(d)
    nu_f = f.valuation()
    if nu_f is None or nu_f < 1:
        raise ValueError("equation must vanish at the origin")
    nu_S_d = nu_f + len(d)
    D = degree_bound if degree_bound is not None else max(nu_S_d, f.total_degree() or 1)
    fx, fy = f.diff(0), f.diff(1)
    cols: List[Tuple[str, int, int]] = []
    for deg in range(D - 1, -1, -1):
        for i in range(deg, -1, -1):
            cols.append(("h", i, deg - i))
    nh = len(cols)
    form_cols = [m for m in _monomials(conv, 1, 1, 10 ** 9, D)]
    cols.extend(form_cols)
    row_index: Dict[Tuple[int, int], int] = {}
    entries: List[Dict[int, Fraction]] = []

    def add(poly: BivariatePoly, col: int, sign: int):
        for m, c in poly.items():
            r = row_index.setdefault(m, len(row_index))
            if r == len(entries):
                entries.append({})
            entries[r][col] = entries[r].get(col, 0) + sign * c

    for k, (part, i, j) in enumerate(cols):
        if part == "h":
            add(f.shift(i, j), k, -1)
        elif part == "dx":
            add(fy.shift(i, j), k, 1)
        else:
            add(fx.shift(i, j), k, -1)
    rows = [[e.get(k, Fraction(0)) for k in range(len(cols))] for e in entries]
    pivots, basis = kernel_with_pivots(rows, len(cols), method)
    pset = set(pivots)
    free = [c for c in range(len(cols)) if c not in pset]
    forms = []
    for fcol, vec in zip(free, basis):
        if fcol < nh:
            continue
        part, i, j = cols[fcol]
        forms.append((i + j, _form_from_vector(cols[nh:], vec[nh:], conv)))
    if not forms:
        raise BoundExhausted(f"no tangent polynomial form of degree <= {D}; raise bounds")
    nu, cert = min(forms, key=lambda t: t[0])
    return SaitoResult(nu, cert, "equation", None, D, nu_S_d, False, sorted(forms, key=lambda t: t[0]))


# -- front door -------------------------------------------------------------------

Curve = Union[BivariatePoly, Parametrization]


def min_saito_valuation(curve: Curve, d: Direction = Direction.none(), degree_bound: Optional[int] = None,
                        jet_order: Optional[int] = None, check_stability: bool = False,
                        method: str = "auto") -> SaitoResult:
    """Minimal valuation of a nonzero form in the Saito module of ``curve`` plus ``d``.

    Equations with a single coprime Newton edge are parametrized and solved
    exactly; the equation route then serves as a cross-check.  Other equations
    only get the equation-route upper bound.
    """
    if isinstance(curve, BivariatePoly):
        f = curve
        if newton_edge(f) is None:
            return min_saito_valuation_equation(f, d, degree_bound, method)
        gamma = _equation_branch(f, d, jet_order)
        res = min_saito_valuation_param(gamma, d, degree_bound, jet_order, method)
        eq = min_saito_valuation_equation(f, d, None, method)
        res.cross_check = {"equation_route_nu": eq.nu_min, "equation_degree_bound": eq.degree_bound,
                           "agrees": eq.nu_min == res.nu_min}
    else:
        gamma = curve
        res = min_saito_valuation_param(gamma, d, degree_bound, jet_order, method)
    if check_stability:
        if isinstance(curve, BivariatePoly):
            gamma = _equation_branch(curve, d, 2 * res.jet_order)
        elif gamma.seed is not None and gamma.is_puiseux_form:
            gamma = generic_parametrization(char_exponents(gamma), gamma.seed,
                                            2 * res.jet_order + gamma.y.order_or_raise() + 2)
        doubled = min_saito_valuation_param(gamma, d, 2 * res.degree_bound, 2 * res.jet_order, method)
        res.stable = doubled.nu_min == res.nu_min
        if not res.stable:
            warnings.warn(f"minimal valuation moved from {res.nu_min} to {doubled.nu_min} under doubled bounds")
    return res


def _equation_branch(f: BivariatePoly, d: Direction, jet_order: Optional[int]) -> Parametrization:
    a, b, _, _ = newton_edge(f)
    rough = parametrize_equation(f, max(a, b) * 4)
    nu_S_d = min(a, b) + len(d)
    M = jet_order if jet_order is not None else default_bounds(rough, nu_S_d)[0]
    return parametrize_equation(f, M + max(a, b) + 2)


# -- Saito criterion ---------------------------------------------------------------

def is_tangent(w: OneForm, curve: Curve, jet_order: Optional[int] = None) -> bool:
    if isinstance(curve, BivariatePoly):
        _, r = w.wedge(OneForm.differential(curve)).divmod_exact(curve)
        return r.is_zero
    s = w.pullback(curve)
    if jet_order is not None:
        s = s.truncate(jet_order)
    return s.is_zero


@dataclass
class CriterionReport:
    tangent: Tuple[bool, bool]
    nu_wedge: Optional[int]
    nu_S_d: int
    valuation_ok: bool
    vanishes: bool
    unit: Optional[Fraction]
    quotient: Optional[str]
    verdict: str
    method: str

    @property
    def passed(self) -> bool:
        return self.verdict == "basis"


def check_saito_criterion(w1: OneForm, w2: OneForm, curve: Curve, d: Direction = Direction.none(),
                          jet_order: Optional[int] = None) -> CriterionReport:
    """Check ``w1 ^ w2 = u f_d dx ^ dy`` with ``u(0) != 0``.

    With an equation the test is exact polynomial division by ``f_d``; with a
    parametrization the wedge must vanish on the branch through ``jet_order``.
    """
    dir_eq = direction_equation(d)
    c = w1.wedge(w2)
    nu_c = c.valuation()
    if isinstance(curve, BivariatePoly):
        f_d = curve * dir_eq
        nu_S_d = f_d.valuation()
        t1 = is_tangent(w1, f_d)
        t2 = is_tangent(w2, f_d)
        q, r = c.divmod_exact(f_d) if not c.is_zero else (BivariatePoly(), BivariatePoly())
        vanishes = r.is_zero
        u0 = q.coefficient(0, 0) if vanishes and not c.is_zero else None
        unit = u0 if u0 else None
        method = "division"
        quotient = str(q) if vanishes and not c.is_zero else None
    else:
        gamma = curve
        nu_S_d = gamma.multiplicity + len(d)
        J = jet_order if jet_order is not None else (gamma.truncation_order or 0)
        t1 = is_tangent(w1, gamma, J) and _direction_tangent(w1, d)
        t2 = is_tangent(w2, gamma, J) and _direction_tangent(w2, d)
        pulled = c.substitute(gamma.x, gamma.y)
        lim = max(J - gamma.x.order_or_raise() + 1, 0)
        vanishes = pulled.truncate(lim).is_zero
        unit = None
        quotient = None
        method = "jets"
    val_ok = nu_c is not None and nu_c == nu_S_d
    if isinstance(curve, BivariatePoly):
        ok = t1 and t2 and val_ok and vanishes and unit is not None
    else:
        ok = t1 and t2 and val_ok and vanishes
    return CriterionReport((t1, t2), nu_c, nu_S_d, val_ok, vanishes, unit, quotient,
                           "basis" if ok else "not a basis", method)


def _direction_tangent(w: OneForm, d: Direction) -> bool:
    conv = convention_for(d)
    P, Q = w.P, w.Q
    if "x" in conv and any(i == 0 for (i, _) in Q.terms):
        return False
    if "y" in conv and any(j == 0 for (_, j) in P.terms):
        return False
    return True


def _wedge_valuation(w1: OneForm, w2: OneForm, upto: int) -> Optional[int]:
    J1 = OneForm(w1.P.truncate(upto), w1.Q.truncate(upto))
    J2 = OneForm(w2.P.truncate(upto), w2.Q.truncate(upto))
    return J1.wedge(J2).truncate(upto).valuation()


def complementary_form(res: SaitoResult) -> Optional[OneForm]:
    """A basis partner for the certificate: least valuation with ``nu(w1 ^ w2) = nu(S_d)``.

    The ``nu(S_d)``-jet of the wedge is linear in the partner, so scanning the
    kernel basis suffices.
    """
    w1 = res.certificate
    for _, w in res.basis:
        if w is w1:
            continue
        if _wedge_valuation(w1, w, res.nu_S_d) == res.nu_S_d:
            return w
    return None


@dataclass
class SaitoBasis:
    forms: Tuple[OneForm, OneForm]
    valuations: Tuple[int, int]
    report: CriterionReport
    degree_bound: int


def saito_basis(f: BivariatePoly, d: Direction = Direction.none(), degree_bound: Optional[int] = None,
                max_degree: int = 64, method: str = "auto") -> SaitoBasis:
    """Polynomial Saito basis for ``f`` plus the direction, checked by the criterion.

    The degree bound doubles until a certified pair appears.
    """
    D = degree_bound if degree_bound is not None else max(f.total_degree() or 1, 2)
    while True:
        res = min_saito_valuation_equation(f, d, D, method)
        w2 = complementary_form(res)
        if w2 is not None:
            rep = check_saito_criterion(res.certificate, w2, f, d)
            if rep.passed:
                return SaitoBasis((res.certificate, w2), (res.nu_min, w2.valuation()), rep, D)
        if D >= max_degree:
            raise BoundExhausted(f"no certified basis with degree <= {D}; raise bounds")
        D = min(2 * D, max_degree)


# -- generic minimum ------------------------------------------------------------------

@dataclass
class GenericMinimumReport:
    char: Tuple[int, ...]
    direction: str
    expected: int
    results: List[dict]

    @property
    def all_match(self) -> bool:
        return all(r["match"] for r in self.results)


def verify_generic_minimum(c: CharExponents, d: Direction, seeds: Sequence[int],
                           check_stability: bool = True, method: str = "auto") -> GenericMinimumReport:
    """Compare the oracle against floor(nu(S_d)/2) on seeded generic members of ``c``."""
    nu_S_d = c.betas[0] + len(d)
    expected = nu_S_d // 2
    out = []
    for seed in seeds:
        rough = generic_parametrization(c, seed)
        M, _ = default_bounds(rough, nu_S_d)
        gamma = generic_parametrization(c, seed, max(M + c.betas[-1] + 2, rough.truncation_order))
        res = min_saito_valuation(gamma, d, check_stability=check_stability, method=method)
        out.append({"seed": seed, "nu_min": res.nu_min, "match": res.nu_min == expected,
                    "below": res.nu_min < expected, "stable": res.stable,
                    "jet_order": res.jet_order, "degree_bound": res.degree_bound})
    return GenericMinimumReport(c.betas, d.name(), expected, out)


def monomial_witness(c: CharExponents, d: Direction = Direction.none()) -> SaitoResult:
    """Oracle on the exact monomial member of ``c`` (non-generic in general)."""
    return min_saito_valuation(monomial_parametrization(c), d)
