"""Prime-field scalar and univariate polynomial helpers.

Polynomials are lists of int coefficients, lowest degree first, reduced mod p
and trimmed of trailing zeros.  Degrees in this package are tiny (at most the
surface degree), so schoolbook arithmetic is the right tool.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "is_prime",
    "poly_trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_powmod",
    "rational_roots",
    "lagrange_interpolate",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers all int64 moduli)."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return poly_trim(out)


def poly_sub(f: list[int], g: list[int], p: int) -> list[int]:
    return poly_add(f, [(-c) % p for c in g], p)


def poly_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return poly_trim(out)


def poly_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    inv_lead = pow(g[-1], -1, p)
    while len(f) >= len(g):
        coef = f[-1] * inv_lead % p
        deg = len(f) - len(g)
        q[deg] = coef
        for i, c in enumerate(g):
            f[deg + i] = (f[deg + i] - coef * c) % p
        poly_trim(f)
        if not f:
            break
    return poly_trim(q), f


def poly_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = list(f), list(g)
    while g:
        _, r = poly_divmod(f, g, p)
        f, g = g, r
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def poly_powmod(base: list[int], exp: int, mod: list[int], p: int) -> list[int]:
    """base^exp modulo the polynomial ``mod`` over F_p."""
    if len(mod) < 2:
        raise ValueError("modulus polynomial must have degree >= 1")
    result = [1]
    base = poly_divmod(base, mod, p)[1]
    while exp > 0:
        if exp & 1:
            result = poly_divmod(poly_mul(result, base, p), mod, p)[1]
        base = poly_divmod(poly_mul(base, base, p), mod, p)[1]
        exp >>= 1
    return result


def _split_linear(g: list[int], p: int, rng: np.random.Generator) -> int:
    """One root of a squarefree product of linear factors (deg >= 1)."""
    while True:
        if len(g) == 2:
            return (-g[0]) * pow(g[1], -1, p) % p
        # Equal-degree splitting: gcd((x + c)^((p-1)/2) - 1, g) is a proper
        # factor with probability about 1/2 for random c.
        c = int(rng.integers(0, p))
        h = poly_powmod([c, 1], (p - 1) // 2, g, p)
        h = poly_sub(h, [1], p)
        f1 = poly_gcd(h, g, p)
        if 0 < len(f1) - 1 < len(g) - 1:
            g = f1 if len(f1) < len(g) else poly_divmod(g, f1, p)[0]


def rational_roots(f: list[int], p: int, rng: np.random.Generator) -> list[int]:
    """All roots of f in F_p via gcd with x^p - x, then equal-degree splitting."""
    f = poly_trim([c % p for c in f])
    if not f:
        raise ValueError("the zero polynomial has every root")
    if len(f) == 1:
        return []
    xp = poly_powmod([0, 1], p, f, p)
    g = poly_gcd(poly_sub(xp, [0, 1], p), f, p)
    roots: list[int] = []
    while len(g) > 1:
        r = _split_linear(g, p, rng)
        roots.append(r)
        g = poly_divmod(g, [(-r) % p, 1], p)[0]
    return sorted(roots)


def lagrange_interpolate(xs: list[int], ys: list[int], p: int) -> list[int]:
    """Coefficients of the unique polynomial of degree < len(xs) through (xs, ys)."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        num = [1]
        denom = 1
        for j in range(n):
            if j != i:
                num = poly_mul(num, [(-xs[j]) % p, 1], p)
                denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * pow(denom, -1, p) % p
        for k, c in enumerate(num):
            out[k] = (out[k] + scale * c) % p
    return poly_trim(out)
