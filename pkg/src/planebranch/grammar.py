"""Recursive-descent parser for curve and form specifications.

Expressions are sums of products of rationals and variables with
non-negative integer powers, e.g. ``y^6-x^7+x^4*y^4`` or ``5/3*x^4``.
Juxtaposition is not multiplication; write ``*``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import CharExponents, Parametrization, Semigroup, char_from_pairs, char_from_semigroup
from .exact import BivariatePoly, TruncatedSeries

Poly = Dict[Tuple[int, ...], Fraction]


class ParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.message = message
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}\n  {text}\n  {' ' * position}^")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()=;,\[\]]))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = list(variables)
        self.big_o: Optional[int] = None

    # -- helpers
    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        return tok

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.peek()[2])

    # -- polynomial arithmetic on exponent tuples
    def _const(self, c) -> Poly:
        c = Fraction(c)
        return {(0,) * len(self.vars): c} if c else {}

    @staticmethod
    def _add(a: Poly, b: Poly, sign: int = 1) -> Poly:
        out = dict(a)
        for m, c in b.items():
            v = out.get(m, 0) + sign * c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    @staticmethod
    def _mul(a: Poly, b: Poly) -> Poly:
        out: Poly = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    # -- grammar
    def expr(self) -> Poly:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self._add({}, self.term(), sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            acc = self._add(acc, self.term(), sign)
        return acc

    def term(self) -> Poly:
        acc = self.power()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()
            rhs = self.power()
            if op[1] == "*":
                acc = self._mul(acc, rhs)
            else:
                if any(any(m) for m in rhs) or not rhs:
                    raise ParseError("division only by a nonzero constant", self.text, op[2])
                acc = {m: c / rhs[next(iter(rhs))] for m, c in acc.items()}
        return acc

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ParseError("exponent must be a non-negative integer", self.text, tok[2])
            out = self._const(1)
            for _ in range(int(tok[1])):
                out = self._mul(out, base)
            return out
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return self._const(int(val))
        if kind == "name":
            self.take()
            if val == "O" and self.peek()[1] == "(":
                return self._big_o(pos)
            if val not in self.vars:
                raise ParseError(f"unknown variable {val!r} (expected one of {', '.join(self.vars)})", self.text, pos)
            m = [0] * len(self.vars)
            m[self.vars.index(val)] = 1
            return {tuple(m): Fraction(1)}
        if val == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        self.error(f"unexpected {val or 'end of input'!r}")

    def _big_o(self, pos: int) -> Poly:
        self.expect("(")
        e = self.expr()
        self.expect(")")
        if len(self.vars) != 1 or len(e) != 1 or next(iter(e.values())) != 1:
            raise ParseError("O(...) takes a single monomial in t", self.text, pos)
        n = next(iter(e))[0]
        self.big_o = n if self.big_o is None else min(self.big_o, n)
        return {}

    def done(self):
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")


def parse_polynomial(text: str) -> BivariatePoly:
    """Polynomial in ``x`` and ``y``."""
    p = _Parser(text, ["x", "y"])
    e = p.expr()
    p.done()
    return BivariatePoly(e)


def parse_equation(text: str) -> BivariatePoly:
    """Curve equation; ``lhs = rhs`` is read as ``lhs - rhs``."""
    p = _Parser(text, ["x", "y"])
    lhs = p.expr()
    if p.peek()[1] == "=":
        p.take()
        lhs = p._add(lhs, p.expr(), -1)
    p.done()
    f = BivariatePoly(lhs)
    if f.is_zero:
        raise ParseError("equation is identically zero", text, 0)
    if f.coefficient(0, 0) != 0:
        raise ParseError("equation does not vanish at the origin", text, 0)
    return f


def _series(p: _Parser, trunc: Optional[int]) -> TruncatedSeries:
    p.big_o = None
    e = p.expr()
    t = p.big_o
    if trunc is not None:
        t = trunc if t is None else min(t, trunc)
    return TruncatedSeries({m[0]: c for m, c in e.items()}, t)


def parse_param(text: str, trunc: Optional[int] = None) -> Parametrization:
    """``x=<series in t>; y=<series in t>``; ``O(t^N)`` marks a truncation."""
    p = _Parser(text, ["t"])
    parts = {}
    while True:
        kind, name, pos = p.take()
        if kind != "name" or name not in ("x", "y"):
            raise ParseError("expected 'x=' or 'y='", text, pos)
        if name in parts:
            raise ParseError(f"{name} given twice", text, pos)
        p.expect("=")
        parts[name] = _series(p, trunc)
        if p.peek()[1] == ";":
            p.take()
            if p.peek()[0] == "end":
                break
            continue
        break
    p.done()
    for name in ("x", "y"):
        if name not in parts:
            raise ParseError(f"missing {name}=", text, len(text))
    x, y = parts["x"], parts["y"]
    for name, s in parts.items():
        if s.terms and s.terms[0][0] == 0:
            raise ParseError(f"{name}(0) must vanish", text, 0)
    return Parametrization(x, y)


def parse_int_list(text: str) -> List[int]:
    """``5,13`` or ``[5, 13]``."""
    p = _Parser(text, [])
    bracket = p.peek()[1] == "["
    if bracket:
        p.take()
    out = [_int(p)]
    while p.peek()[1] == ",":
        p.take()
        out.append(_int(p))
    if bracket:
        p.expect("]")
    p.done()
    return out


def _int(p: _Parser) -> int:
    kind, val, pos = p.take()
    if kind != "num":
        raise ParseError("expected a non-negative integer", p.text, pos)
    return int(val)


def parse_pairs(text: str) -> List[Tuple[int, int]]:
    """``(2,5),(2,15)``, optionally bracketed."""
    p = _Parser(text, [])
    bracket = p.peek()[1] == "["
    if bracket:
        p.take()
    out = []
    while True:
        p.expect("(")
        a = _int(p)
        p.expect(",")
        b = _int(p)
        p.expect(")")
        out.append((a, b))
        if p.peek()[1] != ",":
            break
        p.take()
    if bracket:
        p.expect("]")
    p.done()
    return out


def parse_char(text: str) -> CharExponents:
    try:
        return CharExponents(tuple(parse_int_list(text)))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from exc


def parse_pairs_char(text: str) -> CharExponents:
    pairs = parse_pairs(text)
    try:
        return char_from_pairs(pairs)
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from exc


def parse_semigroup_char(text: str) -> CharExponents:
    gens = parse_int_list(text)
    try:
        return char_from_semigroup(Semigroup(tuple(gens)))
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from exc


def parse_one_form(text: str):
    """``(P)*dx + (Q)*dy`` with ``P, Q`` polynomials in ``x, y``."""
    from .saito.oracle import OneForm

    p = _Parser(text, ["x", "y", "dx", "dy"])
    e = p.expr()
    p.done()
    P, Q = {}, {}
    for (i, j, a, b), c in e.items():
        if a + b != 1:
            raise ParseError("a 1-form must be linear in dx, dy", text, 0)
        (P if a else Q)[(i, j)] = c
    return OneForm.from_PQ(BivariatePoly(P), BivariatePoly(Q))
