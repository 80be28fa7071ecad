# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exact-arithmetic kernels: row reduction and truncated convolution mod p.

These are the hot inner loops of all the large sweeps.  A numpy fallback with
the same signatures lives in ``_kernels_py``; ``kernels`` selects at import.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef long long _inv_mod(long long a, long long p) nogil:
    # Extended Euclid; a must be nonzero mod p, p prime.
    cdef long long t = 0, new_t = 1, r = p, new_r = a % p
    cdef long long q, tmp
    while new_r != 0:
        q = r / new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(cnp.int64_t[:, ::1] a, long long p):
    """Rank of a matrix over F_p.  Destroys ``a`` (pass a reduced copy)."""
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, i, j, col, pivot_row
    cdef long long inv, f, tmp
    if p < 2:
        raise ValueError("modulus must be >= 2")
    with nogil:
        for col in range(n):
            pivot_row = -1
            for i in range(r, m):
                if a[i, col] != 0:
                    pivot_row = i
                    break
            if pivot_row < 0:
                continue
            if pivot_row != r:
                for j in range(col, n):
                    tmp = a[r, j]
                    a[r, j] = a[pivot_row, j]
                    a[pivot_row, j] = tmp
            inv = _inv_mod(a[r, col], p)
            for j in range(col, n):
                a[r, j] = (a[r, j] * inv) % p
            for i in range(r + 1, m):
                f = a[i, col]
                if f != 0:
                    for j in range(col, n):
                        tmp = (a[i, j] - f * a[r, j]) % p
                        if tmp < 0:
                            tmp += p
                        a[i, j] = tmp
            r += 1
            if r == m:
                break
    return r


def conv2_trunc(cnp.int64_t[:, ::1] a, cnp.int64_t[:, ::1] b, long long p):
    """Product of two bivariate polynomials mod p, truncated to the input grid.

    Inputs are (order+1) x (order+1) coefficient arrays c[i, j] of x^i y^j.
    Only entries with i + j <= order are meaningful in the result.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, k, l
    cdef long long v
    out_arr = np.zeros((n, n), dtype=np.int64)
    cdef cnp.int64_t[:, ::1] out = out_arr
    if b.shape[0] != n:
        raise ValueError("operand grids must match")
    with nogil:
        for i in range(n):
            for j in range(n - i):
                v = a[i, j]
                if v != 0:
                    for k in range(n - i):
                        for l in range(n - k - j):
                            out[i + k, j + l] = (out[i + k, j + l] + v * b[k, l]) % p
    return out_arr
