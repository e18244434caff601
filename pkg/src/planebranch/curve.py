"""Plane branches: parametrizations, characteristic exponents, semigroups."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .exact import BivariatePoly, TruncatedSeries, TruncationError


class NotIrreducibleError(ValueError):
    """The input does not describe a single (primitively parametrized) branch."""


# -- characteristic data -------------------------------------------------

@dataclass(frozen=True)
class CharExponents:
    betas: Tuple[int, ...]

    def __post_init__(self):
        b = tuple(int(v) for v in self.betas)
        object.__setattr__(self, "betas", b)
        if not b or b[0] < 1:
            raise ValueError("characteristic exponents need beta_0 >= 1")
        if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
            raise ValueError("characteristic exponents must increase strictly")
        chain = e_chain(b)
        if any(chain[i] <= chain[i + 1] for i in range(len(chain) - 1)):
            raise ValueError(f"gcd chain {chain} does not drop strictly")
        if chain[-1] != 1:
            raise ValueError(f"gcd chain {chain} does not reach 1")
        if b[0] == 1 and len(b) > 1:
            raise ValueError("a smooth branch has no characteristic exponents beyond beta_0 = 1")

    @property
    def multiplicity(self) -> int:
        return self.betas[0]

    @property
    def genus(self) -> int:
        return len(self.betas) - 1

    @property
    def is_smooth(self) -> bool:
        return self.betas[0] == 1

    def e_chain(self) -> Tuple[int, ...]:
        return e_chain(self.betas)

    def __iter__(self):
        return iter(self.betas)

    def __len__(self):
        return len(self.betas)

    def __getitem__(self, i):
        return self.betas[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.betas)) + ")"


def e_chain(betas: Sequence[int]) -> Tuple[int, ...]:
    out = []
    e = 0
    for b in betas:
        e = gcd(e, b)
        out.append(e)
    return tuple(out)


@dataclass(frozen=True)
class Semigroup:
    generators: Tuple[int, ...]

    def __post_init__(self):
        gens = tuple(int(v) for v in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens or min(gens) < 1:
            raise ValueError("semigroup generators must be positive")
        g = 0
        for v in gens:
            g = gcd(g, v)
        if g != 1:
            raise ValueError("generators have a common factor; the complement is infinite")

    def membership(self, limit: int) -> List[bool]:
        """``out[n]`` tells whether ``n`` is in the semigroup, for ``n < limit``."""
        out = [False] * max(limit, 1)
        out[0] = True
        for n in range(1, limit):
            out[n] = any(n >= g and out[n - g] for g in self.generators)
        return out

    def __contains__(self, n: int) -> bool:
        return n >= 0 and self.membership(n + 1)[n]

    def conductor(self) -> int:
        m = min(self.generators)
        run = 0
        n = 0
        member = [True]
        while True:
            n += 1
            member.append(any(n >= g and member[n - g] for g in self.generators))
            run = run + 1 if member[n] else 0
            if run == m:
                return n - m + 1

    def gaps(self) -> List[int]:
        c = self.conductor()
        mem = self.membership(c)
        return [n for n in range(c) if not mem[n]]

    def __iter__(self):
        return iter(self.generators)

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self.generators)) + ">"


def semigroup_from_char(c: CharExponents) -> Semigroup:
    b = c.betas
    e = c.e_chain()
    bars = [b[0]]
    if len(b) > 1:
        bars.append(b[1])
    for i in range(1, len(b) - 1):
        bars.append((e[i - 1] // e[i]) * bars[i] + b[i + 1] - b[i])
    return Semigroup(tuple(bars))


def puiseux_pairs(c: CharExponents) -> List[Tuple[int, int]]:
    e = c.e_chain()
    return [(e[i - 1] // e[i], c.betas[i] // e[i]) for i in range(1, len(c.betas))]


def char_from_pairs(pairs: Sequence[Tuple[int, int]]) -> CharExponents:
    """Inverse of :func:`puiseux_pairs`."""
    if not pairs:
        return CharExponents((1,))
    beta0 = 1
    for m, _ in pairs:
        beta0 *= m
    betas = [beta0]
    e = beta0
    for m, n in pairs:
        if m < 2 or gcd(m, n) != 1:
            raise ValueError(f"Puiseux pair ({m},{n}) must be coprime with m >= 2")
        e //= m
        betas.append(n * e)
    return CharExponents(tuple(betas))


def char_from_semigroup(s: Semigroup) -> CharExponents:
    """Inverse of :func:`semigroup_from_char` for a minimal generating sequence."""
    bars = s.generators
    betas = [bars[0]]
    if len(bars) > 1:
        betas.append(bars[1])
    e = e_chain(bars)
    for i in range(1, len(bars) - 1):
        betas.append(bars[i + 1] - (e[i - 1] // e[i]) * bars[i] + betas[i])
    try:
        c = CharExponents(tuple(betas))
    except ValueError:
        c = None
    if c is None or semigroup_from_char(c).generators != tuple(bars):
        raise ValueError(f"{s} is not the semigroup of a plane branch")
    return c


def conductor(s: Semigroup) -> int:
    return s.conductor()


# -- parametrizations ----------------------------------------------------

@dataclass(frozen=True)
class Parametrization:
    """Local branch ``t -> (x(t), y(t))``; Puiseux form has ``x = t^p`` exactly."""

    x: TruncatedSeries
    y: TruncatedSeries
    seed: Optional[int] = field(default=None, compare=False)

    @classmethod
    def puiseux(cls, p: int, y_series: TruncatedSeries, seed: Optional[int] = None) -> "Parametrization":
        if p < 1:
            raise ValueError("p must be >= 1")
        return cls(TruncatedSeries.monomial(p), y_series, seed)

    @property
    def truncation_order(self) -> Optional[int]:
        tx, ty = self.x.trunc, self.y.trunc
        if tx is None:
            return ty
        if ty is None:
            return tx
        return min(tx, ty)

    @property
    def p(self) -> int:
        return self.x.order_or_raise()

    @property
    def y_series(self) -> TruncatedSeries:
        return self.y

    @property
    def is_puiseux_form(self) -> bool:
        return self.x.trunc is None and len(self.x.terms) == 1 and self.x.terms[0][1] == 1

    @property
    def multiplicity(self) -> int:
        ox = self.x.order()
        oy = self.y.order()
        cands = [v for v in (ox, oy) if v is not None]
        if not cands:
            raise TruncationError("both coordinates vanish below the truncation; increase truncation")
        if ox is None and self.x.trunc is not None and self.x.trunc <= (oy or 0):
            raise TruncationError("multiplicity undecidable; increase truncation")
        if oy is None and self.y.trunc is not None and self.y.trunc <= (ox or 0):
            raise TruncationError("multiplicity undecidable; increase truncation")
        return min(cands)

    @property
    def smooth(self) -> bool:
        return self.multiplicity == 1

    def with_truncation(self, trunc: int) -> "Parametrization":
        return Parametrization(self.x.truncate(trunc), self.y.truncate(trunc), self.seed)

    def __str__(self) -> str:
        return f"x={_series_text(self.x)}; y={_series_text(self.y)}"


def _series_text(s: TruncatedSeries) -> str:
    return str(s)


def _lead_swap(param: Parametrization, precision: Optional[int]) -> Parametrization:
    """Reparametrize so that the coordinate of least order becomes ``x = t^m``."""
    sx, sy = param.x, param.y
    ox, oy = sx.order(), sy.order()
    if ox is None or (oy is not None and oy < ox):
        sx, sy = sy, sx
    m = sx.order_or_raise()
    c = sx.leading_coefficient()
    w = sx.divide_by_t(m).scale(1 / c)
    if w.trunc is None and len(w.terms) == 1:
        return Parametrization(TruncatedSeries.monomial(m), sy, param.seed)
    prec = precision if precision is not None else (w.trunc if w.trunc is not None else sy.trunc)
    if prec is None:
        raise TruncationError("reparametrization needs a truncation order")
    # x = (t w^{1/m})^m; solve s = t w(t)^{1/m} for t
    s_of_t = w.nth_root_unit(m, prec).shift(1).truncate(prec + 1)
    t_of_s = s_of_t.reversion(prec + 1)
    new_y = sy.compose(t_of_s)
    limit = sy.trunc if sy.trunc is not None else prec + 1
    return Parametrization(TruncatedSeries.monomial(m), new_y.truncate(min(limit, prec + 1)), param.seed)


def convert_to_normal(param: Parametrization, precision: Optional[int] = None) -> Parametrization:
    """Bring a branch into the form ``x = t^p, y = t^q + ...`` with ``p < q`` and ``p`` not dividing ``q``.

    Linear rescalings of the coordinates and changes ``y <- y - c x^k`` are used;
    they preserve every topological invariant.  A smooth branch comes back as
    ``(t, 0)`` or with ``p = 1``.
    """
    cur = _lead_swap(param, precision)
    p = cur.p
    y = cur.y
    while True:
        if y.is_zero:
            if y.trunc is None:
                if p == 1:
                    return Parametrization(TruncatedSeries.monomial(1), y, param.seed)
                raise NotIrreducibleError("parametrization is not primitive (y vanishes, p > 1)")
            if p == 1:
                return Parametrization(TruncatedSeries.monomial(1), y, param.seed)
            raise TruncationError("y vanishes below the truncation; increase truncation")
        q = y.order()
        if p == 1:
            return Parametrization(TruncatedSeries.monomial(1), y, param.seed)
        if q % p == 0:
            c = y.leading_coefficient()
            y = y - TruncatedSeries.monomial(q, c)
            continue
        if q < p:
            cur = _lead_swap(Parametrization(cur.x, y, param.seed), precision)
            p, y = cur.p, cur.y
            continue
        break
    lc = y.leading_coefficient()
    if lc != 1:
        y = y.scale(1 / lc)
    _check_primitive(p, y)
    return Parametrization(TruncatedSeries.monomial(p), y, param.seed)


def _check_primitive(p: int, y: TruncatedSeries) -> None:
    e = p
    for k, _ in y.terms:
        e = gcd(e, k)
        if e == 1:
            return
    if y.trunc is None:
        raise NotIrreducibleError(f"exponents share the factor {e}: parametrization is not primitive")
    raise TruncationError(f"gcd chain stops at {e} before truncation {y.trunc}; increase truncation")


def char_exponents(param: Parametrization) -> CharExponents:
    n = convert_to_normal(param)
    p = n.p
    if p == 1:
        return CharExponents((1,))
    betas = [p]
    e = p
    for k, _ in n.y.terms:
        if k % e:
            betas.append(k)
            e = gcd(e, k)
            if e == 1:
                break
    return CharExponents(tuple(betas))


def default_truncation(c: CharExponents) -> int:
    return conductor(semigroup_from_char(c)) + 2 * c.betas[0]


def generic_exponents(c: CharExponents, trunc: int) -> List[int]:
    """Exponents below ``trunc`` allowed by the gcd chain, in increasing order."""
    b = c.betas
    if len(b) == 1:
        return []
    e = c.e_chain()
    out = []
    level = 0
    for k in range(b[1], trunc):
        while level + 1 < len(b) and k >= b[level + 1]:
            level += 1
        if k % e[level] == 0 or k in b:
            out.append(k)
    return out


def generic_parametrization(c: CharExponents, seed: int = 0, trunc: Optional[int] = None,
                            coefficient_range: int = 9) -> Parametrization:
    """Instantiate a generic member of a topological class.

    Characteristic terms get coefficient 1; every other exponent permitted by the
    gcd chain gets a pseudo-random nonzero integer in ``[-r, r]``.  Draws happen
    in increasing exponent order, so a larger ``trunc`` extends the same series.
    """
    if trunc is None:
        trunc = default_truncation(c)
    if c.is_smooth:
        return Parametrization.puiseux(1, TruncatedSeries.zero(trunc), seed)
    if trunc <= c.betas[-1]:
        raise ValueError("truncation must exceed the last characteristic exponent")
    rng = random.Random(seed)
    chars = set(c.betas[1:])
    coeffs = {}
    for k in generic_exponents(c, trunc):
        v = rng.randint(1, coefficient_range) * rng.choice((-1, 1))
        coeffs[k] = 1 if k in chars else v
    return Parametrization.puiseux(c.betas[0], TruncatedSeries(coeffs, trunc), seed)


def monomial_parametrization(c: CharExponents) -> Parametrization:
    """Exact parametrization with only the characteristic terms."""
    if c.is_smooth:
        return Parametrization.puiseux(1, TruncatedSeries.zero())
    return Parametrization.puiseux(c.betas[0], TruncatedSeries({k: 1 for k in c.betas[1:]}))


# -- equations -----------------------------------------------------------

def newton_edge(f: BivariatePoly) -> Optional[Tuple[int, int, Fraction, Fraction]]:
    """``(a, b, c1, c2)`` when ``f = c1 y^a + c2 x^b + (terms of higher weight)``.

    Weights are ``w(x) = a``, ``w(y) = b`` with ``gcd(a, b) = 1``; ``None`` otherwise.
    """
    a = min((j for (i, j) in f.terms if i == 0), default=None)
    b = min((i for (i, j) in f.terms if j == 0), default=None)
    if a is None or b is None or gcd(a, b) != 1:
        return None
    for (i, j) in f.terms:
        w = i * a + j * b
        if w < a * b or (w == a * b and (i, j) not in ((0, a), (b, 0))):
            return None
    return a, b, f.coefficient(0, a), f.coefficient(b, 0)


def parametrize_equation(f: BivariatePoly, trunc: int) -> Parametrization:
    """Parametrize a branch whose Newton polygon is one edge ``y^a ~ x^b``, ``gcd(a,b)=1``.

    Returns ``(mu t^a, t^b u(t))`` with ``f`` vanishing identically on it through
    ``trunc``; ``u`` is found by Newton iteration on ``f(mu t^a, t^b u)/t^{ab}``.
    """
    edge = newton_edge(f)
    if edge is None:
        raise ValueError("equation is not single-edge with coprime exponents; supply a parametrization")
    a, b, c1, c2 = edge
    if f.coefficient(0, 0) != 0:
        raise ValueError("equation does not vanish at the origin")
    r = -c2 / c1
    alpha = next(al for al in range(a) if (b * al + 1) % a == 0)
    beta = (1 + b * alpha) // a
    mu, kappa = r ** alpha, r ** beta
    sx = TruncatedSeries.monomial(a, mu)
    fy = f.diff(1)
    ab = a * b
    prec_u = trunc
    u = TruncatedSeries.constant(kappa, 1)
    n = 1
    while n < prec_u:
        n = min(2 * n, prec_u)
        u_ext = TruncatedSeries(u.terms, n)
        sy = u_ext.shift(b)
        G = f.substitute(sx, sy).divide_by_t(ab).truncate(n)
        Gu = fy.substitute(sx, sy).divide_by_t(ab - b).truncate(n)
        u = (u_ext - G * Gu.inverse(n)).truncate(n)
    return Parametrization(sx, u.shift(b).truncate(trunc), None)


def monomial_equation_parametrization(f: BivariatePoly) -> Optional[Parametrization]:
    """Exact parametrization of ``c1 y^a + c2 x^b`` (binomial) equations, else ``None``."""
    if len(f.terms) != 2:
        return None
    edge = newton_edge(f)
    if edge is None:
        return None
    a, b, c1, c2 = edge
    r = -c2 / c1
    alpha = next(al for al in range(a) if (b * al + 1) % a == 0)
    beta = (1 + b * alpha) // a
    return Parametrization(TruncatedSeries.monomial(a, r ** alpha), TruncatedSeries.monomial(b, r ** beta))
