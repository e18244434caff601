"""Truncated univariate power series in a formal variable ``t``.

A series carries an explicit truncation order ``trunc``: coefficients of
exponent ``>= trunc`` are *unknown*, not zero.  ``trunc=None`` marks an exact
(finite) series.  Any operation that would need an unknown coefficient raises
:class:`TruncationError` instead of silently zero-filling.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple, Union

Number = Union[int, Fraction]


class TruncationError(ArithmeticError):
    """Raised when a result depends on coefficients beyond the truncation order."""

    def __init__(self, message: str = "increase truncation"):
        super().__init__(message)


def _min_trunc(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _add_trunc(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None or b is None:
        return None
    return a + b


class TruncatedSeries:
    """Immutable sparse series ``sum c_k t^k + O(t^trunc)``."""

    __slots__ = ("_terms", "trunc", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, Number], Iterable[Tuple[int, Number]]] = (),
                 trunc: Optional[int] = None):
        if trunc is not None and trunc < 0:
            raise ValueError("truncation order must be non-negative")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: Dict[int, Fraction] = {}
        for k, c in items:
            if k < 0:
                raise ValueError("negative exponent in power series")
            if trunc is not None and k >= trunc:
                continue
            acc[k] = acc.get(k, Fraction(0)) + Fraction(c)
        terms = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "trunc", trunc)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def monomial(cls, k: int, c: Number = 1, trunc: Optional[int] = None) -> "TruncatedSeries":
        return cls({k: c}, trunc)

    @classmethod
    def constant(cls, c: Number, trunc: Optional[int] = None) -> "TruncatedSeries":
        return cls({0: c}, trunc)

    @classmethod
    def zero(cls, trunc: Optional[int] = None) -> "TruncatedSeries":
        return cls((), trunc)

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> Tuple[Tuple[int, Fraction], ...]:
        return self._terms

    def coeffs(self) -> Dict[int, Fraction]:
        return dict(self._terms)

    @property
    def is_exact(self) -> bool:
        return self.trunc is None

    @property
    def is_zero(self) -> bool:
        """True when no coefficient below the truncation order is nonzero."""
        return not self._terms

    def coefficient(self, k: int) -> Fraction:
        if self.trunc is not None and k >= self.trunc:
            raise TruncationError(f"coefficient of t^{k} unknown (truncation {self.trunc}); increase truncation")
        for e, c in self._terms:
            if e == k:
                return c
            if e > k:
                break
        return Fraction(0)

    def order(self) -> Optional[int]:
        """Minimal exponent with nonzero coefficient, or ``None`` (bottom)."""
        return self._terms[0][0] if self._terms else None

    def order_or_raise(self) -> int:
        v = self.order()
        if v is None:
            if self.trunc is None:
                raise ZeroDivisionError("order of the exact zero series")
            raise TruncationError(f"series vanishes below t^{self.trunc}; increase truncation")
        return v

    def lower_bound(self) -> Optional[int]:
        """Known lower bound for the order: the order itself, else the truncation."""
        v = self.order()
        return v if v is not None else self.trunc

    def leading_coefficient(self) -> Fraction:
        self.order_or_raise()
        return self._terms[0][1]

    def constant_term(self) -> Fraction:
        return self.coefficient(0)

    def max_exponent(self) -> Optional[int]:
        return self._terms[-1][0] if self._terms else None

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(other)
        return NotImplemented

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(((k, -c) for k, c in self._terms), self.trunc)

    def __add__(self, other) -> "TruncatedSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = _min_trunc(self.trunc, other.trunc)
        return TruncatedSeries(self._terms + other._terms, trunc)

    __radd__ = __add__

    def __sub__(self, other) -> "TruncatedSeries":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def scale(self, c: Number) -> "TruncatedSeries":
        c = Fraction(c)
        if c == 0:
            return TruncatedSeries.zero()
        return TruncatedSeries(((k, c * a) for k, a in self._terms), self.trunc)

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        a_low, b_low = self.lower_bound(), other.lower_bound()
        if self.trunc is None and not self._terms or other.trunc is None and not other._terms:
            return TruncatedSeries.zero()
        trunc = _min_trunc(_add_trunc(self.trunc, b_low), _add_trunc(other.trunc, a_low))
        acc: Dict[int, Fraction] = {}
        for i, a in self._terms:
            if trunc is not None and i >= trunc:
                break
            for j, b in other._terms:
                k = i + j
                if trunc is not None and k >= trunc:
                    break
                acc[k] = acc.get(k, 0) + a * b
        return TruncatedSeries(acc, trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncatedSeries":
        if n < 0:
            raise ValueError("negative power; use inverse()")
        result = TruncatedSeries.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``t^k``."""
        return TruncatedSeries(((e + k, c) for e, c in self._terms), _add_trunc(self.trunc, k))

    def divide_by_t(self, k: int) -> "TruncatedSeries":
        """Exact division by ``t^k``; the series must be known to vanish below ``t^k``."""
        if self._terms and self._terms[0][0] < k:
            raise ValueError(f"series has order {self._terms[0][0]} < {k}; not divisible by t^{k}")
        if self.trunc is not None and self.trunc < k:
            raise TruncationError(f"cannot divide by t^{k} at truncation {self.trunc}; increase truncation")
        return TruncatedSeries(((e - k, c) for e, c in self._terms),
                               None if self.trunc is None else self.trunc - k)

    def truncate(self, n: Optional[int]) -> "TruncatedSeries":
        if n is None:
            return self
        return TruncatedSeries(self._terms, _min_trunc(self.trunc, n))

    def inverse(self, precision: Optional[int] = None) -> "TruncatedSeries":
        """Inverse of a unit (nonzero constant term).

        Exact non-constant units have infinite inverses; ``precision`` then sets
        the truncation of the result.
        """
        u0 = self.constant_term()
        if u0 == 0:
            raise ZeroDivisionError("series is not a unit")
        trunc = _min_trunc(self.trunc, precision)
        if trunc is None:
            if len(self._terms) == 1:
                return TruncatedSeries.constant(1 / u0)
            raise TruncationError("inverse of an exact non-constant unit needs a precision")
        inv0 = 1 / u0
        tail = [(k, c) for k, c in self._terms if 0 < k < trunc]
        w = [Fraction(0)] * trunc
        w[0] = inv0
        for n in range(1, trunc):
            s = Fraction(0)
            for k, c in tail:
                if k > n:
                    break
                wk = w[n - k]
                if wk:
                    s += c * wk
            w[n] = -inv0 * s
        return TruncatedSeries(enumerate(w), trunc)

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        v = other.order_or_raise()
        den = other.divide_by_t(v)
        num = self.divide_by_t(v)
        if len(den._terms) == 1 and den.trunc is None:
            return num.scale(1 / den._terms[0][1])
        precision = num.trunc
        if precision is None and den.trunc is None:
            raise TruncationError("quotient of exact series is infinite; truncate first")
        return num * den.inverse(precision)

    def derivative(self) -> "TruncatedSeries":
        return TruncatedSeries(((k - 1, k * c) for k, c in self._terms if k > 0),
                               None if self.trunc is None else max(self.trunc - 1, 0))

    def nth_root_unit(self, n: int, precision: Optional[int] = None) -> "TruncatedSeries":
        """``n``-th root of a series with constant term 1 (binomial recursion)."""
        if self.constant_term() != 1:
            raise ValueError("nth_root_unit needs constant term 1")
        trunc = _min_trunc(self.trunc, precision)
        if trunc is None:
            if len(self._terms) == 1:
                return TruncatedSeries.constant(1)
            raise TruncationError("root of an exact non-constant series needs a precision")
        # r^n = u  =>  u r' = (1/n) u' r ; solve coefficientwise
        u = [Fraction(0)] * trunc
        for k, c in self._terms:
            if k < trunc:
                u[k] = c
        r = [Fraction(0)] * trunc
        r[0] = Fraction(1)
        alpha = Fraction(1, n)
        for m in range(1, trunc):
            # m r_m = sum_{k=1..m} (alpha*k - (m-k)) u_k r_{m-k}
            s = Fraction(0)
            for k in range(1, m + 1):
                if u[k]:
                    s += (alpha * k - (m - k)) * u[k] * r[m - k]
            r[m] = s / m
        return TruncatedSeries(enumerate(r), trunc)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(t))`` for ``inner`` of positive order."""
        v = inner.order_or_raise()
        if v < 1:
            raise ValueError("inner series must have positive order")
        power = TruncatedSeries.constant(1)
        last = 0
        total = TruncatedSeries.zero()
        for k, c in self._terms:
            power = power * inner ** (k - last)
            last = k
            total = total + power.scale(c)
        if self.trunc is not None:
            total = total.truncate(self.trunc * v)
        return total

    def reversion(self, precision: Optional[int] = None) -> "TruncatedSeries":
        """Compositional inverse of a series of order exactly 1."""
        if self.order_or_raise() != 1:
            raise ValueError("reversion needs a series of order 1")
        trunc = _min_trunc(self.trunc, precision)
        if trunc is None:
            if len(self._terms) == 1:
                return TruncatedSeries.monomial(1, 1 / self._terms[0][1])
            raise TruncationError("reversion of an exact series needs a precision")
        a1 = self.leading_coefficient()
        g = TruncatedSeries.monomial(1, 1 / a1, trunc)
        t = TruncatedSeries.monomial(1, 1, trunc)
        # fixed point g <- g - (f(g) - t)/a1, one new correct coefficient per sweep
        for _ in range(trunc):
            err = self.compose(g).truncate(trunc) - t
            if err.is_zero:
                break
            g = g - err.scale(1 / a1)
        return g.truncate(trunc)

    # -- comparison / display ----------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._terms == other._terms and self.trunc == other.trunc

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Equality of coefficients below the common truncation order."""
        trunc = _min_trunc(self.trunc, other.trunc)
        return (self - other).truncate(trunc).is_zero

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self._terms, self.trunc))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"

    def __str__(self) -> str:
        from .poly import format_terms
        body = format_terms([((k,), c) for k, c in self._terms], ("t",))
        if self.trunc is None:
            return body
        tail = f"O(t^{self.trunc})"
        return tail if body == "0" else f"{body} + {tail}"
