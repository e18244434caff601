"""Generic moduli dimension of a plane branch and the rigidity classification."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator, List, Optional, Tuple

from .curve import CharExponents, generic_parametrization, monomial_parametrization
from .resolution import ResolutionData, resolve


def sigma(k: int) -> int:
    """Contribution of a center of reduced total multiplicity ``k``."""
    if k < 1:
        raise ValueError("sigma is defined for k >= 1")
    num = (k - 3) ** 2 if k % 2 else (k - 2) * (k - 4)
    q, r = divmod(num, 4)
    assert r == 0
    return q


def dimension_pair(nu1: int, nu2: int) -> int:
    if nu1 < 1 or nu2 < 1:
        raise ValueError("valuations must be >= 1")
    return (nu1 - 1) * (nu1 - 2) // 2 + (nu2 - 1) * (nu2 - 2) // 2


@dataclass(frozen=True)
class DimensionReport:
    N: int
    reduced_total_mults: Tuple[int, ...]
    sigmas: Tuple[int, ...]
    total: int

    @property
    def rigid(self) -> bool:
        return self.total == 0


def generic_dimension(r: ResolutionData) -> DimensionReport:
    mults = tuple(r.reduced_total_mults)
    if any(m < 2 for m in mults):
        # a center always carries the strict transform plus, for i >= 2, a divisor
        raise ValueError("reduced total multiplicity 1 at a blow-up center")
    sig = tuple(sigma(m) for m in mults)
    return DimensionReport(r.N, mults, sig, sum(sig))


def closed_form_nh(n: int, h: int) -> int:
    """Dimension for the class ``<n, nh+1>``."""
    if n < 2 or h < 1:
        raise ValueError("need n >= 2 and h >= 1")
    return sigma(n) + (h - 1) * sigma(n + 1)


def char_classes(max_mult: int, bound: int) -> Iterator[CharExponents]:
    """Every characteristic sequence with ``beta_0 <= max_mult`` and last generator ``<= bound``.

    The bound applies to the largest semigroup generator.
    """
    from .curve import semigroup_from_char

    yield CharExponents((1,))

    def extend(betas: List[int], e: int) -> Iterator[List[int]]:
        if e == 1:
            yield list(betas)
            return
        start = betas[-1] + 1
        for b in range(start, bound + 1):
            if b % e == 0:
                continue
            ne = gcd(e, b)
            cand = betas + [b]
            if max(semigroup_from_char_partial(cand)) > bound:
                break
            yield from extend(cand, ne)

    def semigroup_from_char_partial(betas: List[int]) -> List[int]:
        es = []
        g = 0
        for b in betas:
            g = gcd(g, b)
            es.append(g)
        bars = [betas[0], betas[1]]
        for i in range(1, len(betas) - 1):
            bars.append((es[i - 1] // es[i]) * bars[i] + betas[i + 1] - betas[i])
        return bars

    for b0 in range(2, max_mult + 1):
        for betas in extend([b0], b0):
            c = CharExponents(tuple(betas))
            assert max(semigroup_from_char(c).generators) <= bound
            yield c


@dataclass(frozen=True)
class RigidityEntry:
    char: CharExponents
    dimension: int

    @property
    def rigid(self) -> bool:
        return self.dimension == 0


def classify_rigidity(max_mult: int, bound: int = 40, seed: int = 0,
                      use_generic: bool = True) -> List[RigidityEntry]:
    out = []
    for c in char_classes(max_mult, bound):
        if c.is_smooth:
            out.append(RigidityEntry(c, 0))
            continue
        param = generic_parametrization(c, seed) if use_generic else monomial_parametrization(c)
        out.append(RigidityEntry(c, generic_dimension(resolve(param)).total))
    return out


def closed_form_rigid(c: CharExponents) -> bool:
    """Membership in the closed-form list of generically rigid classes."""
    b = c.betas
    if b[0] <= 3:
        return True
    if b in ((4, 5), (4, 7)):
        return True
    return len(b) == 3 and b[0] == 4 and b[1] == 6 and b[2] % 2 == 1 and b[2] >= 7
