"""Benchmark the compiled rank/series kernels against the numpy fallback.

Runs identical workloads through ``fatpoints._core`` (Cython) and
``fatpoints._kernels_py`` (pure numpy), verifies that the two backends agree
on every output, and reports the median per-call time for each together with
the speedup.  Matrix shapes mirror the package's real workloads: small
fat-point blocks, sweep-sized systems, and near-budget oracle matrices.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--seed S] [--quick]
"""

from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from fatpoints import _kernels_py
from fatpoints.kernels import BACKEND

try:
    from fatpoints import _core
except ImportError:
    _core = None

PRIME = 32003
SERIES_PRIME = 65521

RANK_SHAPES = [
    ("fat-point block", 60, 56),
    ("sweep system", 120, 83),
    ("planar degree 12", 200, 455),
    ("oracle degree 15", 700, 816),
    ("near budget", 1200, 1330),
]

CONV_SHAPES = [
    ("jet chart order 6", 7, 7),
    ("jet chart order 12", 13, 13),
    ("jet chart order 24", 25, 25),
]


def time_call(fn, repeats: int) -> float:
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def bench_rank(rng: np.random.Generator, repeats: int, quick: bool) -> list[tuple]:
    rows = []
    shapes = RANK_SHAPES[:3] if quick else RANK_SHAPES
    for label, m, n in shapes:
        a = rng.integers(0, PRIME, size=(m, n), dtype=np.int64)
        # Plant rank deficiency so elimination does real work on the tail.
        a[m // 2] = (a[0] + a[1]) % PRIME
        ref = _kernels_py.rank_mod_p(a.copy(), PRIME)
        t_py = time_call(lambda: _kernels_py.rank_mod_p(a.copy(), PRIME), repeats)
        if _core is not None:
            got = _core.rank_mod_p(a.copy(), PRIME)
            assert got == ref, f"{label}: backends disagree ({got} vs {ref})"
            t_c = time_call(lambda: _core.rank_mod_p(a.copy(), PRIME), repeats)
        else:
            t_c = None
        rows.append((f"rank {label} ({m}x{n})", t_py, t_c))
    return rows


def bench_conv(rng: np.random.Generator, repeats: int) -> list[tuple]:
    rows = []
    for label, m, n in CONV_SHAPES:
        a = rng.integers(0, SERIES_PRIME, size=(m, n), dtype=np.int64)
        b = rng.integers(0, SERIES_PRIME, size=(m, n), dtype=np.int64)
        # Only entries with index sum <= order are part of the contract; the
        # remaining corner holds backend-specific leftovers.
        keep = np.add.outer(np.arange(m), np.arange(n)) < m
        ref = _kernels_py.conv2_trunc(a, b, SERIES_PRIME)
        t_py = time_call(lambda: _kernels_py.conv2_trunc(a, b, SERIES_PRIME), repeats)
        if _core is not None:
            got = _core.conv2_trunc(a, b, SERIES_PRIME)
            assert np.array_equal(
                np.asarray(got)[keep], ref[keep]
            ), f"{label}: backends disagree"
            t_c = time_call(lambda: _core.conv2_trunc(a, b, SERIES_PRIME), repeats)
        else:
            t_c = None
        rows.append((f"conv {label} ({m}x{n})", t_py, t_c))
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7, help="timing repeats per case")
    parser.add_argument("--seed", type=int, default=0, help="matrix entropy seed")
    parser.add_argument("--quick", action="store_true", help="skip the largest matrices")
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"active package backend: {BACKEND}")
    if _core is None:
        print("compiled extension not importable; timing the numpy fallback only")

    rows = bench_rank(rng, args.repeats, args.quick) + bench_conv(rng, args.repeats)
    width = max(len(r[0]) for r in rows)
    header = f"{'case':<{width}}  {'numpy':>10}  {'compiled':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, t_py, t_c in rows:
        if t_c is None:
            print(f"{label:<{width}}  {t_py * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")
        else:
            print(
                f"{label:<{width}}  {t_py * 1e3:>8.2f}ms  {t_c * 1e3:>8.2f}ms"
                f"  {t_py / t_c:>7.1f}x"
            )
    print("all outputs agree across backends on the contract region")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
