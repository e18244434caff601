# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular row reduction."""


cdef inline long long _inv_mod(long long a, long long p):
    cdef long long t = 0, nt = 1, r = p, nr = a, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rref_mod(long long[:, ::1] A, long long p):
    """Reduce ``A`` (entries in ``[0, p)``, ``p < 2**31``) to RREF mod ``p`` in place.

    Returns the list of pivot columns.
    """
    cdef Py_ssize_t nrows = A.shape[0], ncols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, f, tmp
    pivots = []
    for c in range(ncols):
        if r >= nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = tmp
        inv = _inv_mod(A[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                A[r, j] = (A[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            for j in range(c, ncols):
                A[i, j] = (A[i, j] - f * A[r, j]) % p
                if A[i, j] < 0:
                    A[i, j] += p
        pivots.append(c)
        r += 1
    return pivots
