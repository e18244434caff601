"""Directions, the delta sequence and p-vector, and the numbered dual tree.

A direction is 0, 1 or 2 smooth transverse germs adjoined to the branch.  Each
germ is replayed through the blow-up trace of the branch: it passes through
the next center iff it lifts into the chart that was used and its slope there
equals the translation constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..curve import Parametrization
from ..exact import TruncatedSeries, TruncationError
from ..resolution import BlowupStep, ResolutionData, _order_le


class PropertyViolation(AssertionError):
    """A structural property of the p-vector failed (signals an engine bug)."""

    def __init__(self, prop: str, index: Optional[int], detail: str):
        super().__init__(f"property {prop} fails at index {index}: {detail}")
        self.prop = prop
        self.index = index
        self.detail = detail


# -- directions ------------------------------------------------------------

AXIS_X = "x"   # the germ {x = 0}
AXIS_Y = "y"   # the germ {y = 0}


@dataclass(frozen=True)
class DirectionComponent:
    axis: Optional[str] = None
    param: Optional[Parametrization] = None

    def __post_init__(self):
        if (self.axis is None) == (self.param is None):
            raise ValueError("a direction component is either an axis or a parametrization")
        if self.axis is not None and self.axis not in (AXIS_X, AXIS_Y):
            raise ValueError(f"unknown axis {self.axis!r}")
        if self.param is not None:
            ox, oy = self.param.x.order(), self.param.y.order()
            if any(o is not None and o < 1 for o in (ox, oy)):
                raise ValueError("direction component must pass through the origin")
            if self.param.multiplicity != 1:
                raise ValueError("direction component is not smooth")

    def series(self) -> Tuple[TruncatedSeries, TruncatedSeries]:
        if self.axis == AXIS_X:
            return TruncatedSeries.zero(), TruncatedSeries.monomial(1)
        if self.axis == AXIS_Y:
            return TruncatedSeries.monomial(1), TruncatedSeries.zero()
        return self.param.x, self.param.y

    def tangent(self) -> Tuple[Fraction, Fraction]:
        X, Y = self.series()
        return X.coefficient(1), Y.coefficient(1)

    def label(self) -> str:
        if self.axis == AXIS_X:
            return "{x=0}"
        if self.axis == AXIS_Y:
            return "{y=0}"
        return "{" + str(self.param) + "}"


@dataclass(frozen=True)
class Direction:
    components: Tuple[DirectionComponent, ...] = ()

    def __post_init__(self):
        if len(self.components) > 2:
            raise ValueError("a direction has at most two components")
        if len(self.components) == 2:
            (a, b), (c, d) = (comp.tangent() for comp in self.components)
            if a * d - b * c == 0:
                raise ValueError("the two direction components are not transverse")

    @classmethod
    def none(cls) -> "Direction":
        return cls(())

    @classmethod
    def x(cls) -> "Direction":
        return cls((DirectionComponent(axis=AXIS_X),))

    @classmethod
    def y(cls) -> "Direction":
        return cls((DirectionComponent(axis=AXIS_Y),))

    @classmethod
    def xy(cls) -> "Direction":
        return cls((DirectionComponent(axis=AXIS_X), DirectionComponent(axis=AXIS_Y)))

    @classmethod
    def custom(cls, params: Sequence[Parametrization]) -> "Direction":
        return cls(tuple(DirectionComponent(param=p) for p in params))

    @classmethod
    def from_name(cls, name: str) -> "Direction":
        table = {"none": cls.none, "x": cls.x, "y": cls.y, "xy": cls.xy}
        if name not in table:
            raise ValueError(f"unknown direction {name!r}")
        return table[name]()

    def __len__(self) -> int:
        return len(self.components)

    @property
    def axes(self) -> Optional[frozenset]:
        """Set of axes when every component is an axis, else ``None``."""
        if any(c.axis is None for c in self.components):
            return None
        return frozenset(c.axis for c in self.components)

    def name(self) -> str:
        ax = self.axes
        if ax is None:
            return "custom"
        return {frozenset(): "none", frozenset("x"): "x", frozenset("y"): "y",
                frozenset("xy"): "xy"}[ax]


def _lift(X: TruncatedSeries, Y: TruncatedSeries, step: BlowupStep):
    """Strict transform of a smooth germ through the chart of ``step``; ``None`` if it misses the center."""
    if step.chart == "x":
        if not _order_le(X, Y):
            return None
        Y1 = Y / X
        if Y1.constant_term() != step.translation:
            return None
        return X, Y1 - step.translation
    if not _order_le(Y, X):
        return None
    X1 = X / Y
    if X1.constant_term() != step.translation:
        return None
    return X1 - step.translation, Y


def direction_trace(r: ResolutionData, d: Direction) -> List[int]:
    """For each component of ``d``, the last center it passes through (1-based)."""
    out = []
    for comp in d.components:
        X, Y = comp.series()
        last = 1
        for k, step in enumerate(r.steps[:-1], start=1):
            lifted = _lift(X, Y, step)
            if lifted is None:
                break
            X, Y = lifted
            last = k + 1
        out.append(last)
    return out


def delta_sequence(r: ResolutionData, d: Direction) -> List[int]:
    if r.N == 0:
        return []
    last = direction_trace(r, d)
    delta = [len(d)]
    for i in range(2, r.N + 1):
        through = sum(1 for k in last if k >= i)
        delta.append(len(r.steps[i - 1].center_divisors) + through)
    return delta


def attachments(r: ResolutionData, d: Direction) -> List[int]:
    """Divisor met by the strict transform of each component of ``d``."""
    return direction_trace(r, d) if r.N else []


# -- p-vector --------------------------------------------------------------

def v_vector(r: ResolutionData, delta: Sequence[int]) -> List[int]:
    return [(m - dl) // 2 + 1 for m, dl in zip(r.strict_mults, delta)]


def p_vector(r: ResolutionData, delta: Sequence[int]) -> List[int]:
    v = v_vector(r, delta)
    return [int(x) for x in r.proximity @ v]


@dataclass
class PropertyReport:
    prop1: List[Tuple[int, str]] = field(default_factory=list)
    prop1_ok: bool = True
    prop2: bool = True
    prop3: List[dict] = field(default_factory=list)
    prop3_ok: bool = True
    violations: List[str] = field(default_factory=list)

    @property
    def all_pass(self) -> bool:
        return self.prop1_ok and self.prop2 and self.prop3_ok


def _components(vertices: Sequence[int], edges) -> List[List[int]]:
    vs = set(vertices)
    adj: Dict[int, List[int]] = {v: [] for v in vs}
    for a, b in edges:
        if a in vs and b in vs:
            adj[a].append(b)
            adj[b].append(a)
    seen = set()
    comps = []
    for v in sorted(vs):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def check_combinatorial_properties(r: ResolutionData, delta: Sequence[int], p: Sequence[int],
                                   attach: Sequence[int] = (), strict: bool = False) -> PropertyReport:
    """Check the three properties of the p-vector; ``strict`` raises on the first violation."""
    rep = PropertyReport()
    N = r.N
    n = [k + 1 for k in r.n_row]
    m = r.strict_mults

    def fail(prop, idx, msg):
        rep.violations.append(f"({prop}) index {idx}: {msg}")
        if strict:
            raise PropertyViolation(prop, idx, msg)

    for i in range(1, N + 1):
        pi = p[i - 1]
        if pi < -1:
            rep.prop1_ok = False
            fail("1", i, f"p = {pi} < -1")
        elif pi == -1:
            nxt = delta[i] if i < N else None
            base = delta[i - 1] == 2 and nxt == 1 and m[i - 1] % 2 == 1
            q = r.first_char_exponent(i) if base and n[i - 1] == 3 else None
            if base and n[i - 1] == 2:
                rep.prop1.append((i, "a"))
            elif base and n[i - 1] == 3 and q is not None and q % 2 == 0:
                rep.prop1.append((i, "b"))
            else:
                rep.prop1_ok = False
                fail("1", i, "p = -1 outside cases (a) and (b)")
    minus = {i for i in range(1, N + 1) if p[i - 1] == -1}
    for a, b in r.edges:
        if a in minus and b in minus:
            rep.prop2 = False
            fail("2", a, f"adjacent vertices {a} and {b} both have p = -1")
    kept = [i for i in range(1, N) if i not in minus]
    attached = set(attach)
    for comp in _components(kept, r.edges):
        pos = [j for j in comp if p[j - 1] > 0]
        met = [j for j in comp if j in attached]
        ok = bool(pos or met)
        rep.prop3.append({"component": comp, "positive": pos, "meets_direction": met, "ok": ok})
        if not ok:
            rep.prop3_ok = False
            fail("3", comp[0], f"component {comp} has no positive vertex and meets no direction germ")
    return rep


# -- single-pair closed forms ------------------------------------------------

def n1_from_pair(p: int, q: int) -> int:
    return -(-q // (q - p))


def p1_formula(p: int, q: int, d1: int, d2: int) -> int:
    """Expanded first row of the p-vector for a curve with first pair ``(p, q)``."""
    n = n1_from_pair(p, q)
    if n == 2:
        return (p - d1) // 2 - (p - d2) // 2
    total = (p - d1) // 2
    deltas = [d2] + [2] * (n - 2)
    for j in range(2, n):
        total -= (q - p - deltas[j - 2]) // 2
    total -= ((n - 1) * p - (n - 2) * q - deltas[n - 2]) // 2
    return total - n + 2


# (delta_1, delta_2) -> values in the columns: p and q both odd, both even,
# p even q odd, p odd q even.  An int is a constant; a pair (a, b) stands for
# (n + a)/2 when n is even and (n + b)/2 when n is odd.
_TABLE = {
    (0, 1): (1, 1, (-2, -1), (-2, -3)),
    (1, 1): (1, 0, (-4, -3), (-2, -3)),
    (1, 2): (1, 0, (-2, -1), (0, -1)),
    (2, 1): (0, 0, (-4, -3), (-4, -5)),
    (2, 2): (0, 0, (-2, -1), (-2, -3)),
}


def p1_table(p: int, q: int, d1: int, d2: int, allow_even: bool = False) -> int:
    """First p-vector entry read off the case analysis (closed list for n = 2, lookup table for n >= 3)."""
    from math import gcd
    if not 0 < p < q or q % p == 0:
        raise ValueError("need p < q with p not dividing q")
    if p % 2 == 0 and q % 2 == 0 and not allow_even:
        raise ValueError("p and q both even: not a coprime pair")
    if not allow_even and gcd(p, q) != 1:
        raise ValueError("p and q are not coprime")
    if (d1, d2) not in _TABLE:
        raise ValueError(f"no case for delta_1={d1}, delta_2={d2}")
    n = n1_from_pair(p, q)
    if n == 2:
        if d1 == 0:
            return 0 if p % 2 else 1
        if d1 == 1:
            return 0 if d2 == 1 else (1 if p % 2 else 0)
        return (-1 if p % 2 else 0) if d2 == 1 else 0
    row = _TABLE[(d1, d2)]
    if p % 2 and q % 2:
        entry = row[0]
    elif p % 2 == 0 and q % 2 == 0:
        entry = row[1]
    elif p % 2 == 0:
        entry = row[2]
    else:
        entry = row[3]
    if isinstance(entry, tuple):
        return (n + entry[n % 2]) // 2
    return entry


# -- numbered dual tree ------------------------------------------------------

INF = "inf"


@dataclass(frozen=True)
class NumberedDualTree:
    N: int
    edges: Tuple[Tuple[int, int], ...]
    numbering: Tuple[object, ...]
    rule_numbering: Tuple[int, ...]
    direction_attach: Tuple[int, ...]
    curve_attach: Optional[int]
    self_intersections: Tuple[int, ...]
    last_dicritical: bool = True

    def to_dot(self) -> str:
        lines = ["graph numbered_dual_tree {"]
        for i in range(1, self.N + 1):
            lab = self.numbering[i - 1]
            lines.append(f'  D{i} [label="D{i}: {lab}"];')
        for a, b in self.edges:
            lines.append(f"  D{a} -- D{b};")
        for k, j in enumerate(self.direction_attach, start=1):
            lines.append(f'  d{k} [label="d{k}", shape=plaintext];')
            lines.append(f"  d{k} -- D{j} [style=dotted];")
        if self.curve_attach is not None:
            lines.append('  S [label="S", shape=plaintext];')
            lines.append(f"  S -- D{self.curve_attach} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def numbered_dual_tree(r: ResolutionData, d: Direction, p: Sequence[int]) -> NumberedDualTree:
    attach = attachments(r, d)
    rule = []
    shown = []
    for i in range(1, r.N + 1):
        val = p[i - 1] + sum(1 for j in attach if j == i)
        rule.append(val)
        shown.append(INF if p[i - 1] == -1 else val)
    selfs = tuple(int(r.intersection[i, i]) for i in range(r.N))
    return NumberedDualTree(r.N, tuple(r.edges), tuple(shown), tuple(rule), tuple(attach),
                            r.final_attach, selfs)


# -- multiplicity identity ----------------------------------------------------

def foliation_mult_identity(r: ResolutionData, delta: Sequence[int], p: Sequence[int]):
    """``(lhs, rhs, equal)`` for sum_{i<N} p_i e_{1i} + delta_1 - 1 versus floor(nu(S_d)/2)."""
    if r.N == 0:
        raise ValueError("the identity concerns singular branches (N >= 1)")
    row = r.proximity_inverse.tolist()[0]
    lhs = sum(p[i] * row[i] for i in range(r.N - 1)) + delta[0] - 1
    rhs = (r.strict_mults[0] + delta[0]) // 2
    return lhs, rhs, lhs == rhs


@dataclass(frozen=True)
class DeltaPData:
    direction: str
    delta: Tuple[int, ...]
    v: Tuple[int, ...]
    p: Tuple[int, ...]
    report: PropertyReport


def delta_p_data(r: ResolutionData, d: Direction) -> DeltaPData:
    delta = delta_sequence(r, d)
    p = p_vector(r, delta)
    rep = check_combinatorial_properties(r, delta, p, attachments(r, d))
    return DeltaPData(d.name(), tuple(delta), tuple(v_vector(r, delta)), tuple(p), rep)
