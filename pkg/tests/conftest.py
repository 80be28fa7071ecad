"""Shared test helpers.

The brute-force dimension oracle here is deliberately independent of the
package kernels: pure Python row construction (iterated derivative values at
random points) and pure Python Gaussian elimination. Unit tests use it to
cross-check the reduction-based classifiers on small inputs.
"""

from __future__ import annotations

import random
from math import comb


def rank_mod_reference(rows: list[list[int]], p: int) -> int:
    """Row-reduction rank over F_p, list-of-lists, no numpy."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for piv in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][piv] % p:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        inv = pow(rows[rank][piv] % p, -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][piv] % p:
                c = rows[i][piv] % p
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def fat_point_rows_plane(e: int, mults: list[int], p: int, seed: int) -> list[list[int]]:
    """Vanishing conditions for plane curves of degree e at random points.

    One row per derivative order (i, j) with i + j < m at each point, using
    binomial-weighted derivative values so the rows stay valid mod small p.
    """
    rng = random.Random(seed)
    monos = [(a, b) for a in range(e + 1) for b in range(e + 1 - a)]
    rows: list[list[int]] = []
    for m in mults:
        u, v = rng.randrange(p), rng.randrange(p)
        for i in range(m):
            for j in range(m - i):
                rows.append(
                    [
                        comb(a, i) * comb(b, j) * pow(u, a - i, p) * pow(v, b - j, p) % p
                        if a >= i and b >= j
                        else 0
                        for (a, b) in monos
                    ]
                )
    return rows


def bruteforce_planar_dim(e: int, mults: list[int], p: int = 32003, seed: int = 0) -> int:
    """Dimension of the planar series at one random point configuration.

    Lower-bounds the dimension at general points; equals it with high
    probability for random configurations, and exactly certifies
    nonspeciality whenever it returns the expected dimension.
    """
    if e < 0:
        return 0
    ncols = (e + 1) * (e + 2) // 2
    rows = fat_point_rows_plane(e, mults, p, seed)
    return ncols - rank_mod_reference(rows, p) if rows else ncols
