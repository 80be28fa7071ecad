"""Backend selection for the exact mod-p kernels.

Prefers the compiled extension ``fatpoints._core`` and falls back to the
numpy implementations when the extension is unavailable.  ``BACKEND`` reports
which one is active; both backends are exercised by the test suite and the
benchmark script regardless of which is selected here.
"""

from __future__ import annotations

import numpy as np

from . import _kernels_py

try:  # pragma: no cover - depends on the build environment
    from . import _core

    _impl = _core
    BACKEND = "compiled"
except ImportError:  # pragma: no cover
    _impl = _kernels_py
    BACKEND = "numpy"

#: Largest modulus accepted by the elimination kernels (products must fit int64).
MAX_RANK_PRIME = (1 << 31) - 1
#: Largest modulus accepted by the series kernels (accumulated sums fit int64).
MAX_SERIES_PRIME = (1 << 24) - 1


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p (input is not modified)."""
    if p > MAX_RANK_PRIME:
        raise ValueError(f"modulus too large for the int64 kernels: {p}")
    a = np.ascontiguousarray(np.asarray(matrix, dtype=np.int64) % p)
    if a.size == 0:
        return 0
    return int(_impl.rank_mod_p(a, p))


def nullity_mod_p(matrix: np.ndarray, p: int) -> int:
    """Dimension of the right kernel of the matrix over F_p."""
    matrix = np.asarray(matrix)
    return matrix.shape[1] - rank_mod_p(matrix, p)


def conv2_trunc(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Truncated bivariate polynomial product mod p (grids must match)."""
    if p > MAX_SERIES_PRIME:
        raise ValueError(f"modulus too large for the series kernels: {p}")
    return _impl.conv2_trunc(
        np.ascontiguousarray(a, dtype=np.int64),
        np.ascontiguousarray(b, dtype=np.int64),
        p,
    )
