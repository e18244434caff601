"""Blow-up resolution of a plane branch and its combinatorial record.

The engine works on a local branch ``(X(t), Y(t))`` and carries at most two
exceptional divisor branches through the current point, each of them one of
the coordinate axes (``'x'`` for ``{X = 0}``, ``'y'`` for ``{Y = 0}``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .curve import Parametrization, char_exponents
from .exact import IntMatrix, TruncatedSeries, TruncationError


class ResolutionError(ArithmeticError):
    pass


def _order_le(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    """Decide ``ord a <= ord b`` (exact zero has order infinity)."""
    oa, ob = a.order(), b.order()
    if oa is not None:
        if ob is not None:
            return oa <= ob
        if b.trunc is None or b.trunc >= oa:
            return True
        raise TruncationError("order comparison undecidable; increase truncation")
    if a.trunc is None:
        if b.trunc is None and ob is None:
            raise ResolutionError("both coordinates vanish identically")
        return False
    if ob is not None and ob < a.trunc:
        return False
    raise TruncationError("order comparison undecidable; increase truncation")


def multiplicity(X: TruncatedSeries, Y: TruncatedSeries) -> int:
    return X.order_or_raise() if _order_le(X, Y) else Y.order_or_raise()


def order_is_one(s: TruncatedSeries) -> bool:
    v = s.order()
    if v is not None:
        return v == 1
    if s.trunc is not None and s.trunc < 2:
        raise TruncationError("order undecidable; increase truncation")
    return False


def first_char_exponent(X: TruncatedSeries, Y: TruncatedSeries) -> Optional[int]:
    """First characteristic exponent of the branch ``(X, Y)`` (``None`` if smooth)."""
    if not _order_le(X, Y):
        X, Y = Y, X
    m = X.order_or_raise()
    if m == 1:
        return None
    lx = X.leading_coefficient()
    while True:
        v = Y.order_or_raise()
        if v % m:
            return v
        k = v // m
        Y = Y - (X ** k).scale(Y.leading_coefficient() / lx ** k)


@dataclass(frozen=True)
class BlowupStep:
    index: int
    chart: str
    center_divisors: Tuple[int, ...]
    strict_mult: int
    translation: Fraction

    @property
    def reduced_total_mult(self) -> int:
        return self.strict_mult + len(self.center_divisors)


@dataclass(frozen=True)
class BranchState:
    """Local branch plus the divisor branches through its base point."""

    X: TruncatedSeries
    Y: TruncatedSeries
    labels: Tuple[Tuple[str, int], ...] = ()

    def divisors(self) -> Tuple[int, ...]:
        return tuple(sorted(i for _, i in self.labels))

    def is_resolved(self) -> bool:
        if multiplicity(self.X, self.Y) != 1 or len(self.labels) != 1:
            return False
        axis = self.labels[0][0]
        return order_is_one(self.X if axis == "x" else self.Y)


def blowup_once(state: BranchState, index: int) -> Tuple[BranchState, BlowupStep]:
    """Blow up the base point of ``state``; the new divisor gets number ``index``."""
    X, Y = state.X, state.Y
    m = multiplicity(X, Y)
    labels = dict(state.labels)
    if _order_le(X, Y):
        chart = "x"
        Y1 = Y / X
        c = Y1.constant_term()
        X2, Y2 = X, Y1 - c
        new = {"x": index}
        if "y" in labels and c == 0:
            new["y"] = labels["y"]
    else:
        chart = "y"
        X1 = X / Y
        c = X1.constant_term()
        X2, Y2 = X1 - c, Y
        new = {"y": index}
        if "x" in labels and c == 0:
            new["x"] = labels["x"]
    step = BlowupStep(index, chart, state.divisors(), m, c)
    return BranchState(X2, Y2, tuple(sorted(new.items()))), step


def trace(param: Parametrization, max_steps: int = 100000):
    """Blow up until the strict transform is smooth, meets one divisor, transversally.

    Returns the steps, the final state and the states at each center.
    """
    state = BranchState(param.x, param.y)
    steps: List[BlowupStep] = []
    states: List[BranchState] = []
    if multiplicity(state.X, state.Y) == 1:
        return steps, state, states
    while not steps or not state.is_resolved():
        if len(steps) >= max_steps:
            raise ResolutionError("step limit reached")
        states.append(state)
        state, step = blowup_once(state, len(steps) + 1)
        steps.append(step)
    return steps, state, states


def working_truncation(param: Parametrization) -> int:
    """Initial truncation for the blow-up pipeline."""
    try:
        betas = char_exponents(param).betas
    except TruncationError:
        betas = (param.multiplicity,)
    return betas[-1] + 2 * betas[0] + 4


def trace_adaptive(param: Parametrization):
    """Run :func:`trace` at a working truncation, doubling it on truncation failures.

    Never exceeds the truncation of ``param`` itself.
    """
    limit = param.truncation_order
    T = working_truncation(param)
    while True:
        use = T if limit is None else min(T, limit)
        try:
            steps, state, states = trace(param.with_truncation(use))
            return steps, state, states, use
        except TruncationError as exc:
            if limit is not None and use >= limit:
                raise TruncationError(f"resolution needs more than truncation {limit}; increase truncation") from exc
            if T > 1 << 16:
                raise
            T *= 2


# -- matrices and graphs ---------------------------------------------------

def proximity_matrix(steps: Sequence[BlowupStep]) -> IntMatrix:
    N = len(steps)
    E = [[0] * N for _ in range(N)]
    for i, st in enumerate(steps):
        E[i][i] = 1
        for j in st.center_divisors:
            E[j - 1][i] = -1
    return IntMatrix(E, N)


def proximity_inverse(E: IntMatrix) -> IntMatrix:
    """Inverse of a unit upper-triangular integer matrix by back substitution."""
    A = E.tolist()
    n = len(A)
    if any(A[i][i] != 1 or any(A[i][j] for j in range(i)) for i in range(n)):
        raise ValueError("expected a unit upper-triangular matrix")
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n):
            if A[i][j]:
                a = A[i][j]
                row_j = inv[j]
                row_i = inv[i]
                for k in range(j, n):
                    row_i[k] -= a * row_j[k]
    return IntMatrix(inv, n)


def dual_edges(steps: Sequence[BlowupStep]) -> List[Tuple[int, int]]:
    edges = set()
    for st in steps:
        i = st.index
        cd = st.center_divisors
        if len(cd) == 2:
            edges.discard(tuple(sorted(cd)))
        for a in cd:
            edges.add((min(a, i), max(a, i)))
    return sorted(edges)


def later_centers(steps: Sequence[BlowupStep], i: int) -> int:
    return sum(1 for st in steps if i in st.center_divisors)


def intersection_from_bookkeeping(steps: Sequence[BlowupStep]) -> IntMatrix:
    N = len(steps)
    M = [[0] * N for _ in range(N)]
    for i in range(1, N + 1):
        M[i - 1][i - 1] = -1 - later_centers(steps, i)
    for a, b in dual_edges(steps):
        M[a - 1][b - 1] = M[b - 1][a - 1] = 1
    return IntMatrix(M, N)


def sign_conventions(E: IntMatrix, intersection: IntMatrix) -> List[str]:
    """Which of the four candidate products of ``E`` equals the intersection matrix."""
    A = E.tolist()
    n = len(A)
    ETE = [[sum(A[k][i] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    EET = [[sum(A[i][k] * A[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
    neg = lambda M: [[-v for v in row] for row in M]
    cands = {"E^T E": ETE, "-E^T E": neg(ETE), "E E^T": EET, "-E E^T": neg(EET)}
    target = intersection.tolist()
    return [name for name, M in cands.items() if M == target]


@dataclass(frozen=True)
class DivisorComponent:
    index: int
    self_intersection: int
    neighbors: Tuple[int, ...]


@dataclass(frozen=True)
class ResolutionData:
    param: Parametrization
    steps: Tuple[BlowupStep, ...]
    proximity: IntMatrix
    proximity_inverse: IntMatrix
    intersection: IntMatrix
    edges: Tuple[Tuple[int, int], ...]
    sign_matches: Tuple[str, ...]
    final_state: BranchState = field(compare=False)
    truncation: Optional[int] = None
    center_states: Tuple[BranchState, ...] = field(default=(), compare=False, repr=False)

    @property
    def N(self) -> int:
        return len(self.steps)

    @property
    def strict_mults(self) -> List[int]:
        return [s.strict_mult for s in self.steps]

    @property
    def reduced_total_mults(self) -> List[int]:
        return [s.reduced_total_mult for s in self.steps]

    @property
    def n_row(self) -> List[int]:
        """``n_i - 1``: number of later centers on ``D_i``."""
        return [sum(1 for v in row if v == -1) for row in self.proximity.tolist()]

    def first_char_exponent(self, i: int) -> Optional[int]:
        """First characteristic exponent of the strict transform at center ``i`` (1-based)."""
        st = self.center_states[i - 1]
        return first_char_exponent(st.X, st.Y)

    @property
    def final_attach(self) -> Optional[int]:
        return self.final_state.labels[0][1] if self.steps else None

    @property
    def dual_adjacency(self) -> List[List[bool]]:
        A = [[False] * self.N for _ in range(self.N)]
        for a, b in self.edges:
            A[a - 1][b - 1] = A[b - 1][a - 1] = True
        return A

    def neighbors(self, i: int) -> Tuple[int, ...]:
        return tuple(sorted({b for a, b in self.edges if a == i} | {a for a, b in self.edges if b == i}))

    def components(self) -> List[DivisorComponent]:
        return [DivisorComponent(i, int(self.intersection[i - 1, i - 1]), self.neighbors(i))
                for i in range(1, self.N + 1)]

    def to_dot(self) -> str:
        lines = ["graph dual {"]
        for c in self.components():
            lines.append(f'  D{c.index} [label="{c.index} ({c.self_intersection})"];')
        for a, b in self.edges:
            lines.append(f"  D{a} -- D{b};")
        if self.steps:
            lines.append('  S [label="S", shape=plaintext];')
            lines.append(f"  S -- D{self.final_attach} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def resolve(param: Parametrization) -> ResolutionData:
    steps, state, states, T = trace_adaptive(param)
    E = proximity_matrix(steps)
    Einv = proximity_inverse(E) if steps else IntMatrix([], 0)
    inter = intersection_from_bookkeeping(steps)
    signs = sign_conventions(E, inter) if steps else []
    return ResolutionData(param, tuple(steps), E, Einv, inter, tuple(dual_edges(steps)),
                          tuple(signs), state, T, tuple(states))
