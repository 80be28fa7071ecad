"""Pure numpy implementations of the hot kernels (fallback backend).

Same contracts as the compiled versions in ``_core``: exact arithmetic over
F_p with int64 storage.  ``rank_mod_p`` destroys its input, mirroring the
compiled kernel, so callers always pass a fresh reduced copy.
"""

from __future__ import annotations

import numpy as np


def rank_mod_p(a: np.ndarray, p: int) -> int:
    """Rank over F_p by vectorized Gaussian elimination.  Destroys ``a``."""
    if p < 2:
        raise ValueError("modulus must be >= 2")
    m, n = a.shape
    r = 0
    for col in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i], col:] = a[[i, r], col:]
        inv = pow(int(a[r, col]), -1, p)
        a[r, col:] = a[r, col:] * inv % p
        below = a[r + 1 :, col]
        mask = below != 0
        if mask.any():
            a[r + 1 :, col:][mask] = (
                a[r + 1 :, col:][mask] - np.outer(below[mask], a[r, col:])
            ) % p
        r += 1
    return r


def conv2_trunc(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Truncated bivariate product mod p on matching (order+1)^2 grids."""
    n = a.shape[0]
    if b.shape[0] != n:
        raise ValueError("operand grids must match")
    out = np.zeros((n, n), dtype=np.int64)
    idx_i, idx_j = np.nonzero(a)
    for i, j in zip(idx_i.tolist(), idx_j.tolist()):
        if i + j >= n:
            continue
        out[i:, j:] += a[i, j] * b[: n - i, : n - j]
    out %= p
    return out
