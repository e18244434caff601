"""Dense exact matrices and null spaces."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from . import modular

Number = Union[int, Fraction]

# below this many entries the plain rational elimination is faster than going modular
MODULAR_THRESHOLD = 400


class RatMatrix:
    """Immutable dense matrix with rational entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Number]], ncols: int = None):
        data = tuple(tuple(Fraction(v) for v in row) for row in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("matrices are immutable")

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(m)], n)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows), self.nrows) if self.nrows else RatMatrix([], 0)

    @property
    def T(self) -> "RatMatrix":
        return self.transpose()

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            return RatMatrix([[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols]
                              for row in self.rows], other.ncols)
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum((a * Fraction(b) for a, b in zip(row, vec)), Fraction(0)) for row in self.rows]

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-v for v in row] for row in self.rows], self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.rows for v in row)

    def tolist(self) -> List[List[Union[int, Fraction]]]:
        """Entries as ints where integral, else Fractions."""
        return [[int(v) if v.denominator == 1 else v for v in row] for row in self.rows]

    def rref(self) -> Tuple["RatMatrix", List[int]]:
        R, piv = rref_fraction(self.rows, self.ncols)
        return RatMatrix(R, self.ncols), piv

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> "RatMatrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        R, piv = rref_fraction(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RatMatrix([row[n:] for row in R], n)

    def __repr__(self) -> str:
        return f"RatMatrix({self.tolist()})"


class IntMatrix(RatMatrix):
    """Rational matrix whose entries are required to be integers."""

    __slots__ = ()

    def __init__(self, rows, ncols: int = None):
        super().__init__(rows, ncols)
        if not self.is_integral():
            raise ValueError("IntMatrix entries must be integers")

    def tolist(self) -> List[List[int]]:
        return [[int(v) for v in row] for row in self.rows]


def rref_fraction(rows: Sequence[Sequence[Number]], ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form by plain rational Gauss-Jordan elimination."""
    A = [[Fraction(v) for v in row] for row in rows]
    m = len(A)
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        if inv != 1:
            A[r] = [v * inv for v in A[r]]
        pr = A[r]
        for i in range(m):
            if i != r:
                f = A[i][c]
                if f:
                    row = A[i]
                    A[i] = [a - f * b if b else a for a, b in zip(row, pr)]
        pivots.append(c)
        r += 1
    return A, pivots


def kernel_basis(M: Union[RatMatrix, Sequence[Sequence[Number]]], ncols: int = None,
                 method: str = "auto") -> List[List[Fraction]]:
    """Exact null-space basis of ``M`` (one vector per free column of the RREF).

    Vector ``k`` has entry 1 at the ``k``-th free column and 0 at the other free
    columns, so the basis is canonical.  ``method`` is ``"fraction"``,
    ``"modular"`` or ``"auto"``.
    """
    return kernel_with_pivots(M, ncols, method)[1]


def kernel_with_pivots(M, ncols: int = None, method: str = "auto") -> Tuple[List[int], List[List[Fraction]]]:
    if isinstance(M, RatMatrix):
        rows, ncols = M.rows, M.ncols
    else:
        rows = [list(r) for r in M]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
    if method == "auto":
        method = "fraction" if len(rows) * ncols <= MODULAR_THRESHOLD else "modular"
    if method == "modular":
        return modular.kernel_basis_modular(rows, ncols)
    if method != "fraction":
        raise ValueError(f"unknown kernel method {method!r}")
    R, pivots = rref_fraction(rows, ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -R[r][f]
        basis.append(vec)
    return pivots, basis
