"""Local analytic charts on smooth surface points over a prime field.

At a smooth point P of a surface f = 0 in P^3 we build a two-variable chart:
after dehomogenizing and moving P to the origin, a linear frame is chosen so
that the first two chart variables span the tangent plane (the first one along
a requested tangent direction when given) and the third is transverse.  The
surface is then the graph z = phi(x, y) of a power series with no constant or
linear part, solved degree by degree from the graph equation.

Germs are truncated bivariate polynomials stored as (order+1) x (order+1)
int64 grids mod p; only entries with row + column <= order are meaningful.
The germ of every ambient monomial of bounded degree is produced by a graded
dynamic program multiplying one coordinate germ at a time, which is what the
condition-row construction in the oracle module consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kernels import conv2_trunc

__all__ = [
    "SingularChart",
    "JetChart",
    "jet_parametrize",
    "monomials_of_degree",
    "monomials_up_to_degree",
    "monomial_germs",
    "germ_rows",
    "row_positions",
]


class SingularChart(RuntimeError):
    """No chart variable has nonzero derivative at the point."""


@dataclass(frozen=True)
class JetChart:
    """A solved local chart at a smooth surface point.

    ``phi`` is the graph series of the surface in frame coordinates and
    ``coord_series`` holds the germ of each of the four ambient coordinates
    as a function of the two chart variables (the chart coordinate itself has
    germ identically one).
    """

    p: int
    point: tuple[int, int, int, int]
    chart_index: int
    frame: tuple[tuple[int, ...], ...]
    order: int
    phi: np.ndarray
    coord_series: tuple[np.ndarray, ...]


def _zero_grid(order: int) -> np.ndarray:
    return np.zeros((order + 1, order + 1), dtype=np.int64)


def _const_grid(value: int, order: int, p: int) -> np.ndarray:
    g = _zero_grid(order)
    g[0, 0] = value % p
    return g


def _linear_grid(const: int, cx: int, cy: int, order: int, p: int) -> np.ndarray:
    g = _zero_grid(order)
    g[0, 0] = const % p
    if order >= 1:
        g[1, 0] = cx % p
        g[0, 1] = cy % p
    return g


@lru_cache(maxsize=None)
def monomials_of_degree(degree: int, nvars: int = 4) -> tuple[tuple[int, ...], ...]:
    """All exponent tuples of the given total degree, lexicographic."""
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(degree - first, nvars - 1):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomials_up_to_degree(degree: int, nvars: int = 4) -> tuple[tuple[int, ...], ...]:
    out: list[tuple[int, ...]] = []
    for k in range(degree + 1):
        out.extend(monomials_of_degree(k, nvars))
    return tuple(out)


def _z_poly_for_form(
    exps: tuple[tuple[int, ...], ...],
    coeffs: tuple[int, ...],
    lin: list[np.ndarray],
    zc: list[int],
    order: int,
    p: int,
) -> list[np.ndarray]:
    """Expand sum_i c_i prod_j L_j(x, y, z)^{e_ij} as a polynomial in z.

    Each ambient coordinate contributes L_j = lin[j](x, y) + zc[j] * z.
    Returns grids [G_0, ..., G_d] with the form equal to sum_k G_k z^k,
    truncated past total (x, y) degree ``order``.
    """
    d = max(sum(e) for e in exps)
    one = _const_grid(1, order, p)

    # Dynamic program over monomials of degree <= d: z-polynomial of each.
    table: dict[tuple[int, ...], list[np.ndarray]] = {(0, 0, 0, 0): [one]}
    for k in range(1, d + 1):
        for mono in monomials_of_degree(k):
            j = next(i for i, e in enumerate(mono) if e > 0)
            parent = tuple(e - (1 if i == j else 0) for i, e in enumerate(mono))
            prev = table[parent]
            cur: list[np.ndarray] = []
            for t in range(len(prev) + 1):
                acc = _zero_grid(order)
                if t < len(prev):
                    acc = conv2_trunc(prev[t], lin[j], p)
                if t >= 1 and zc[j] and t - 1 < len(prev):
                    acc = (acc + zc[j] * prev[t - 1]) % p
                cur.append(acc)
            table[mono] = cur

    out = [_zero_grid(order) for _ in range(d + 1)]
    for mono, c in zip(exps, coeffs):
        if c % p == 0:
            continue
        for t, grid in enumerate(table[mono]):
            out[t] = (out[t] + c * grid) % p
    return out


def _solve_graph_series(fz: list[np.ndarray], order: int, p: int) -> np.ndarray:
    """Solve F(x, y, phi(x, y)) = 0 for phi with no constant or linear part.

    Requires F(0) = 0, vanishing linear (x, y)-part of F(x, y, 0), and a unit
    z-coefficient at the origin; proceeds degree by degree.
    """
    if int(fz[0][0, 0]) % p != 0:
        raise ValueError("chart origin does not lie on the surface")
    if order >= 1 and (int(fz[0][1, 0]) % p or int(fz[0][0, 1]) % p):
        raise ValueError("frame is not tangent: linear terms survive")
    c = int(fz[1][0, 0]) % p if len(fz) > 1 else 0
    if c == 0:
        raise SingularChart("transverse derivative vanishes at the point")
    c_inv = pow(c, -1, p)

    phi = _zero_grid(order)
    for degree in range(2, order + 1):
        # Residual of the current partial solution, truncated at this degree.
        powers = _const_grid(1, order, p)
        residual = fz[0].copy()
        for k in range(1, len(fz)):
            powers = conv2_trunc(powers, phi, p)
            if not powers.any():
                break
            residual = (residual + conv2_trunc(fz[k], powers, p)) % p
        for j in range(degree + 1):
            i = degree - j
            coef = int(residual[i, j]) % p
            if coef:
                phi[i, j] = (-c_inv * coef) % p
    return phi


def _grad_affine(
    exps: tuple[tuple[int, ...], ...],
    coeffs: tuple[int, ...],
    point: tuple[int, ...],
    chart_index: int,
    p: int,
) -> list[int]:
    """Partial derivatives at the point in the three non-chart coordinates."""
    grads = []
    for j in range(4):
        if j == chart_index:
            continue
        total = 0
        for mono, c in zip(exps, coeffs):
            if mono[j] == 0:
                continue
            term = c * mono[j] % p
            for i, e in enumerate(mono):
                ee = e - (1 if i == j else 0)
                if ee:
                    term = term * pow(point[i], ee, p) % p
            total = (total + term) % p
        grads.append(total)
    return grads


def _tangent_basis(g: list[int], p: int) -> list[list[int]]:
    """Two independent vectors annihilated by the nonzero covector g."""
    k = next(i for i, x in enumerate(g) if x % p)
    inv = pow(g[k], -1, p)
    basis = []
    for j in range(3):
        if j == k:
            continue
        v = [0, 0, 0]
        v[j] = 1
        v[k] = (-g[j] * inv) % p
        basis.append(v)
    return basis


def _det3(m: list[list[int]], p: int) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    ) % p


def jet_parametrize(instance, point, order: int, direction=None, rng=None) -> JetChart:
    """Chart and graph series at a smooth point of the instance's surface.

    ``direction``, when given, is an ambient tangent 4-vector; the first chart
    variable is aligned with it, so tangency rows extracted along the x-axis
    constrain exactly that direction.  ``rng`` (numpy Generator) randomizes the
    free frame choices; omitted, a deterministic completion is used.
    """
    if order < 1:
        raise ValueError(f"jet order must be >= 1, got {order}")
    p = instance.p
    if rng is None:
        rng = np.random.default_rng(0)

    c_idx = next((i for i in range(4) if point[i] % p), None)
    if c_idx is None:
        raise ValueError("zero vector is not a projective point")
    scale = pow(point[c_idx], -1, p)
    pt = tuple(x * scale % p for x in point)

    if instance.evaluate(pt) != 0:
        raise ValueError("point does not lie on the surface")
    g = _grad_affine(instance.exps, instance.coeffs, pt, c_idx, p)
    if not any(x % p for x in g):
        raise SingularChart("gradient vanishes in every chart coordinate")

    tangent = _tangent_basis(g, p)
    m1 = None
    if direction is not None:
        # Affine image of the ambient direction: v_j - v_c * P_j off the
        # chart coordinate (the point is normalized so P_c = 1).
        vc = direction[c_idx] % p
        w = [
            (direction[j] - vc * pt[j]) % p for j in range(4) if j != c_idx
        ]
        if not any(w):
            raise ValueError("direction is radial: no affine tangent image")
        if sum(gi * wi for gi, wi in zip(g, w)) % p != 0:
            raise ValueError("direction is not tangent to the surface")
        m1 = w
    else:
        m1 = tangent[0]

    k_transverse = next(i for i, x in enumerate(g) if x % p)
    for _ in range(64):
        coefs = [int(x) for x in rng.integers(0, p, size=2)]
        m2 = [
            (coefs[0] * tangent[0][i] + coefs[1] * tangent[1][i]) % p for i in range(3)
        ]
        m3 = [0, 0, 0]
        m3[k_transverse] = 1
        frame_cols = [m1, m2, m3]
        m = [[frame_cols[col][row] for col in range(3)] for row in range(3)]
        if _det3(m, p) != 0:
            break
    else:
        raise SingularChart("could not complete a nondegenerate frame")

    # Ambient coordinate j (j != chart) restricted to the chart:
    # P_j + M_j0 x + M_j1 y + M_j2 z.
    lin: list[np.ndarray] = []
    zc: list[int] = []
    rows_m = {j: m[i] for i, j in enumerate(i for i in range(4) if i != c_idx)}
    for j in range(4):
        if j == c_idx:
            lin.append(_const_grid(1, order, p))
            zc.append(0)
        else:
            r = rows_m[j]
            lin.append(_linear_grid(pt[j], r[0], r[1], order, p))
            zc.append(r[2] % p)

    fz = _z_poly_for_form(instance.exps, instance.coeffs, lin, zc, order, p)
    phi = _solve_graph_series(fz, order, p)

    coord_series = []
    for j in range(4):
        grid = lin[j].copy()
        if zc[j]:
            grid = (grid + zc[j] * phi) % p
        coord_series.append(grid)

    return JetChart(
        p=p,
        point=pt,
        chart_index=c_idx,
        frame=tuple(tuple(row) for row in m),
        order=order,
        phi=phi,
        coord_series=tuple(coord_series),
    )


def monomial_germs(chart: JetChart, e: int) -> tuple[tuple[tuple[int, ...], ...], np.ndarray]:
    """Germ grids of every degree-e ambient monomial on the chart.

    Returns (monomials, grids) with grids[i] the truncated germ of
    monomials[i]; computed by one multiplication per monomial over a graded
    table of lower-degree germs.
    """
    p = chart.p
    order = chart.order
    table: dict[tuple[int, ...], np.ndarray] = {
        (0, 0, 0, 0): _const_grid(1, order, p)
    }
    for k in range(1, e + 1):
        for mono in monomials_of_degree(k):
            j = next(i for i, x in enumerate(mono) if x > 0)
            parent = tuple(x - (1 if i == j else 0) for i, x in enumerate(mono))
            table[mono] = conv2_trunc(table[parent], chart.coord_series[j], p)
    monos = monomials_of_degree(e)
    grids = np.stack([table[mono] for mono in monos])
    return monos, grids


def row_positions(max_degree: int) -> list[tuple[int, int]]:
    """Grid positions (i, j) ordered by total degree, then by j.

    With the chart's x-axis on the distinguished direction, the first
    C(m+1, 2) positions are the full m-fold point conditions and the next n
    positions are the degree-m tangency refinements, for every m <= the
    maximum degree and n <= m.  Prefixes of this list therefore realize every
    supported punctual scheme.
    """
    return [(t - j, j) for t in range(max_degree + 1) for j in range(t + 1)]


def germ_rows(chart: JetChart, e: int, max_degree: int) -> np.ndarray:
    """Condition-row block at the chart's point, one row per germ coefficient.

    Row (t, j) of the block constrains the coefficient of x^(t-j) y^j of the
    restricted germ; columns run over the degree-e ambient monomials in the
    order of :func:`monomials_of_degree`.
    """
    if max_degree > chart.order:
        raise ValueError(
            f"rows of degree {max_degree} need a chart of order >= {max_degree}, "
            f"got {chart.order}"
        )
    _, grids = monomial_germs(chart, e)
    positions = row_positions(max_degree)
    rows = np.empty((len(positions), grids.shape[0]), dtype=np.int64)
    for r, (i, j) in enumerate(positions):
        rows[r] = grids[:, i, j]
    return rows
