"""Multi-modular exact kernel computation.

The RREF of an integer matrix is computed modulo several word-size primes,
lifted by CRT and rational reconstruction, then certified exactly: a candidate
kernel basis ``V`` is accepted only once ``M V = 0`` holds modulo a set of
primes whose product exceeds the largest possible entry of ``M V``.  The
certificate makes the result independent of the choice of primes.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

import numpy as np

if os.environ.get("PLANEBRANCH_PURE"):
    from ._kernels_py import rref_mod
    BACKEND = "python"
else:
    try:
        from ._kernels import rref_mod  # type: ignore[attr-defined]
        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import rref_mod
        BACKEND = "python"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_below(limit: int):
    """Primes in decreasing order starting just below ``limit``."""
    n = limit - 1
    while n > 2:
        if _is_prime(n):
            yield n
        n -= 1


def rational_reconstruction(a: int, m: int) -> Optional[Fraction]:
    """Return ``r/s`` with ``r = a s (mod m)`` and ``|r|, |s| <= sqrt(m/2)``, or ``None``."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _lift_all(residues: Sequence[int], m: int) -> Optional[List[Fraction]]:
    """Reconstruct every residue, reusing a running common denominator."""
    bound = isqrt(m // 2)
    half = m // 2
    den = 1
    out = []
    for x in residues:
        y = x * den % m
        if y > half:
            y -= m
        if abs(y) <= bound:
            out.append(Fraction(y, den))
            continue
        fr = rational_reconstruction(x, m)
        if fr is None:
            return None
        out.append(fr)
        d = den * fr.denominator // gcd(den, fr.denominator)
        if d <= bound:
            den = d
    return out


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    """Scale each row by the lcm of its denominators; the kernel is unchanged."""
    out = []
    for row in rows:
        den = 1
        for v in row:
            d = Fraction(v).denominator
            den = den * d // gcd(den, d)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def _rref_mod_p(int_rows: List[List[int]], ncols: int, p: int):
    A = np.array([[v % p for v in row] for row in int_rows], dtype=np.int64).reshape(len(int_rows), ncols)
    pivots = rref_mod(A, p)
    return A, list(pivots)


def _certify(int_rows: List[List[int]], basis: List[List[Fraction]]) -> bool:
    if not basis or not int_rows:
        return True
    ints = []
    for vec in basis:
        den = 1
        for v in vec:
            den = den * v.denominator // gcd(den, v.denominator)
        ints.append([int(v * den) for v in vec])
    row_bound = max(sum(abs(v) for v in row) for row in int_rows)
    vec_bound = max(abs(v) for vec in ints for v in vec)
    target = 2 * row_bound * vec_bound + 1
    modulus = 1
    for q in primes_below(1 << 21):
        Mq = np.array([[v % q for v in row] for row in int_rows], dtype=np.int64)
        Vq = np.array([[v % q for v in vec] for vec in ints], dtype=np.int64).T
        if np.any((Mq @ Vq) % q):
            return False
        modulus *= q
        if modulus > target:
            return True
    raise RuntimeError("ran out of certification primes")


def kernel_basis_modular(rows: Sequence[Sequence[Fraction]], ncols: int,
                         max_primes: int = 100000) -> Tuple[List[int], List[List[Fraction]]]:
    """Exact RREF kernel basis; returns ``(pivot_columns, basis)``.

    Each basis vector has a 1 at one free column, 0 at the other free columns.
    """
    int_rows = integer_rows(rows)
    if not int_rows:
        return [], [[Fraction(int(i == f)) for i in range(ncols)] for f in range(ncols)]
    best_pivots: Optional[Tuple[int, ...]] = None
    residues: List[int] = []
    modulus = 1
    last_probe: Optional[Fraction] = None
    used = 0
    for p in primes_below(1 << 31):
        used += 1
        if used > max_primes:
            raise RuntimeError("multi-modular kernel did not converge")
        A, pivots = _rref_mod_p(int_rows, ncols, p)
        key = tuple(pivots)
        if best_pivots is not None and key != best_pivots:
            better = len(key) > len(best_pivots) or (len(key) == len(best_pivots) and key < best_pivots)
            if not better:
                continue
        if key != best_pivots:
            best_pivots = key
            residues = []
            modulus = 1
            last_probe = None
        free = [c for c in range(ncols) if c not in set(key)]
        vals = [int(A[r, f]) for r in range(len(key)) for f in free]
        if not residues:
            residues = vals
            modulus = p
        else:
            inv = pow(modulus % p, -1, p)
            residues = [x + modulus * (((v - x) * inv) % p) for x, v in zip(residues, vals)]
            modulus *= p
        # cheap probe first; the full lift runs only once the probe has stabilized
        probe = rational_reconstruction(residues[-1], modulus) if residues else Fraction(0)
        if probe is None or probe != last_probe:
            last_probe = probe
            continue
        recon = _lift_all(residues, modulus)
        if recon is not None:
            basis = _assemble(key, free, recon, ncols)
            if _certify(int_rows, basis):
                return list(key), basis
    raise RuntimeError("multi-modular kernel did not converge")


def _assemble(pivots: Sequence[int], free: Sequence[int], entries: Sequence[Fraction],
              ncols: int) -> List[List[Fraction]]:
    nf = len(free)
    basis = []
    for k, f in enumerate(free):
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -entries[r * nf + k]
        basis.append(vec)
    return basis
