"""Sparse bivariate polynomials over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from .series import TruncatedSeries, TruncationError

Number = Union[int, Fraction]
Monomial = Tuple[int, int]


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(terms: Sequence[Tuple[Tuple[int, ...], Fraction]], names: Sequence[str]) -> str:
    """Render terms in the input grammar (``3/2*x^2*y - y^3``)."""
    if not terms:
        return "0"
    out = []
    for idx, (exps, c) in enumerate(terms):
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        neg = c < 0
        mag = -c if neg else c
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rational(mag)] + factors)
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class BivariatePoly:
    """Immutable polynomial ``sum c_ij x^i y^j`` with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Union[Mapping[Monomial, Number], Iterable[Tuple[Monomial, Number]]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Dict[Monomial, Fraction] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent in polynomial")
            acc[(i, j)] = acc.get((i, j), Fraction(0)) + Fraction(c)
        object.__setattr__(self, "_terms", {m: c for m, c in acc.items() if c != 0})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("BivariatePoly is immutable")

    @classmethod
    def x(cls) -> "BivariatePoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BivariatePoly":
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c: Number) -> "BivariatePoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Number = 1) -> "BivariatePoly":
        return cls({(i, j): c})

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def valuation(self) -> Optional[int]:
        """Order at the origin, ``min(i+j)``; ``None`` for the zero polynomial."""
        return min((i + j for i, j in self._terms), default=None)

    def total_degree(self) -> Optional[int]:
        return max((i + j for i, j in self._terms), default=None)

    def degree_in(self, var: int) -> Optional[int]:
        return max((m[var] for m in self._terms), default=None)

    def jet(self, k: int) -> "BivariatePoly":
        """Homogeneous part of degree ``k``."""
        return BivariatePoly({m: c for m, c in self._terms.items() if m[0] + m[1] == k})

    def truncate(self, k: int) -> "BivariatePoly":
        """Terms of total degree ``<= k``."""
        return BivariatePoly({m: c for m, c in self._terms.items() if m[0] + m[1] <= k})

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, BivariatePoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BivariatePoly.constant(other)
        return NotImplemented

    def __neg__(self):
        return BivariatePoly({m: -c for m, c in self._terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return BivariatePoly(acc)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: Dict[Monomial, Fraction] = {}
        for (i1, j1), a in self._terms.items():
            for (i2, j2), b in other._terms.items():
                m = (i1 + i2, j1 + j2)
                acc[m] = acc.get(m, 0) + a * b
        return BivariatePoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = BivariatePoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: Number) -> "BivariatePoly":
        c = Fraction(c)
        return BivariatePoly({m: c * a for m, a in self._terms.items()})

    def shift(self, di: int, dj: int) -> "BivariatePoly":
        """Multiply by ``x^di y^dj``."""
        return BivariatePoly({(i + di, j + dj): c for (i, j), c in self._terms.items()})

    def diff(self, var: int) -> "BivariatePoly":
        """Partial derivative: ``var=0`` for x, ``var=1`` for y."""
        acc = {}
        for (i, j), c in self._terms.items():
            e = (i, j)[var]
            if e:
                m = (i - 1, j) if var == 0 else (i, j - 1)
                acc[m] = c * e
        return BivariatePoly(acc)

    def divmod_exact(self, divisor: "BivariatePoly") -> Tuple["BivariatePoly", "BivariatePoly"]:
        """Multivariate division with a lex (x > y) leading-term order.

        Returns ``(quotient, remainder)`` with ``self = quotient*divisor + remainder``
        and no remainder term divisible by the leading monomial of ``divisor``.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = max(divisor._terms)
        lc = divisor._terms[lead]
        rem = dict(self._terms)
        quot: Dict[Monomial, Fraction] = {}
        out: Dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem)
            c = rem.pop(m)
            if m[0] >= lead[0] and m[1] >= lead[1]:
                q = (m[0] - lead[0], m[1] - lead[1])
                f = c / lc
                quot[q] = quot.get(q, 0) + f
                for (i, j), d in divisor._terms.items():
                    if (i, j) == lead:
                        continue
                    k = (i + q[0], j + q[1])
                    v = rem.get(k, 0) - f * d
                    if v:
                        rem[k] = v
                    else:
                        rem.pop(k, None)
            else:
                out[m] = c
        return BivariatePoly(quot), BivariatePoly(out)

    def exact_div(self, divisor: "BivariatePoly") -> "BivariatePoly":
        q, r = self.divmod_exact(divisor)
        if not r.is_zero:
            raise ArithmeticError("polynomial division leaves a remainder")
        return q

    # -- evaluation ---------------------------------------------------
    def evaluate(self, x: Number, y: Number) -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum((c * x ** i * y ** j for (i, j), c in self._terms.items()), Fraction(0))

    def substitute(self, sx: TruncatedSeries, sy: TruncatedSeries) -> TruncatedSeries:
        """``f(sx(t), sy(t))`` correct through the common truncation order."""
        if not self._terms:
            return TruncatedSeries.zero(_common_trunc(sx, sy))
        max_i = max(i for i, _ in self._terms)
        max_j = max(j for _, j in self._terms)
        xp = _powers(sx, max_i)
        yp = _powers(sy, max_j)
        total = TruncatedSeries.zero()
        for (i, j), c in sorted(self._terms.items()):
            total = total + (xp[i] * yp[j]).scale(c)
        return total

    # -- comparison / display ----------------------------------------
    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(frozenset(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def sorted_terms(self):
        """Terms by increasing total degree, then decreasing x-exponent."""
        return sorted(self._terms.items(), key=lambda mc: (mc[0][0] + mc[0][1], -mc[0][0]))

    def __str__(self) -> str:
        return format_terms(self.sorted_terms(), ("x", "y"))

    def __repr__(self) -> str:
        return f"BivariatePoly({self})"


def _common_trunc(sx: TruncatedSeries, sy: TruncatedSeries) -> Optional[int]:
    if sx.trunc is None:
        return sy.trunc
    if sy.trunc is None:
        return sx.trunc
    return min(sx.trunc, sy.trunc)


def _powers(s: TruncatedSeries, n: int):
    out = [TruncatedSeries.constant(1)]
    for _ in range(n):
        out.append(out[-1] * s)
    return out


__all__ = ["BivariatePoly", "format_terms", "format_rational", "TruncationError"]
