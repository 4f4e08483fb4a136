# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Row reduction mod a word-sized prime."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, nt = 1, r = p, nr = a % p, q, tmp
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


def rank_mod_p(object M, i64 p):
    """Rank of an integer matrix over F_p (p < 2**31)."""
    cdef cnp.ndarray[i64, ndim=2] A = np.array(M, dtype=np.int64, copy=True) % p
    cdef Py_ssize_t m = A.shape[0], n = A.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv
    cdef i64 inv, f, t
    for col in range(n):
        if row >= m:
            break
        piv = -1
        for i in range(row, m):
            if A[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != row:
            for j in range(col, n):
                f = A[row, j]
                A[row, j] = A[piv, j]
                A[piv, j] = f
        inv = _inv(A[row, col], p)
        for j in range(col, n):
            A[row, j] = A[row, j] * inv % p
        for i in range(row + 1, m):
            f = A[i, col]
            if f != 0:
                for j in range(col, n):
                    # C remainder keeps the sign of the dividend
                    t = (A[i, j] - f * A[row, j]) % p
                    A[i, j] = t + p if t < 0 else t
        row += 1
    return int(row)
