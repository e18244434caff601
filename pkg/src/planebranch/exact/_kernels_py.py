"""Pure-Python (numpy) modular row reduction, the fallback for the compiled kernel."""

import numpy as np


def rref_mod(A, p):
    """Reduce ``A`` (int64, entries in ``[0, p)``, ``p < 2**31``) to RREF mod ``p`` in place.

    Returns the list of pivot columns.
    """
    nrows, ncols = A.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv], c:] = A[[piv, r], c:]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = (A[r, c:] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            # entries < 2**31, so the outer product stays below 2**62
            A[rows, c:] = (A[rows, c:] - np.outer(col[rows], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots
