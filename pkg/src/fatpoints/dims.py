"""Counting functions for linear series with fat base points on surfaces in P^3.

Everything here is exact integer (or rational/float where stated) arithmetic:
section counts for smooth degree-d surfaces, degrees of punctual conditions,
virtual and expected dimensions, and the numeric inequality scans built on a
square-root growth function of the section count.

Dimension convention: ``vdim``/``edim``/``dim`` count vector-space dimensions
(one more than the dimension of the associated projective space).  The
projective quantity is available separately as :func:`v_projective`, and
``vdim == v_projective + 1`` on the same data.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SurfaceSeriesSpec",
    "PlanarSeriesSpec",
    "CICurve",
    "RDivisorClass",
    "MinConfigReport",
    "SmallPairsReport",
    "c3",
    "h0_surface",
    "h0_curve",
    "fat_degree",
    "delta_degree",
    "vdim",
    "edim",
    "v_projective",
    "g_value",
    "scan_superadditivity",
    "scan_discrete_convexity",
    "check_small_pairs",
    "randomized_min_config",
    "parse_mults",
    "format_mults",
]


def c3(n: int) -> int:
    """n(n-1)(n-2)/6 for n >= 3, else 0 (the truncated binomial C(n, 3))."""
    return n * (n - 1) * (n - 2) // 6 if n >= 3 else 0


def _validated_mults(mults: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted((int(m) for m in mults), reverse=True))
    if any(m < 1 for m in out):
        raise ValueError(f"multiplicities must be >= 1, got {out}")
    return out


@dataclass(frozen=True)
class SurfaceSeriesSpec:
    """A linear series on a general smooth degree-d surface in P^3.

    Sections of O(e) vanishing to order ``mults[i]`` at general points.
    Multiplicities are stored sorted descending (canonical form).
    """

    d: int
    e: int
    mults: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"surface degree must be >= 1, got {self.d}")
        object.__setattr__(self, "mults", _validated_mults(self.mults))

    @property
    def degree(self) -> int:
        """Total degree of the imposed fat-point conditions."""
        return sum(fat_degree(m) for m in self.mults)

    def __str__(self) -> str:
        return f"L^{self.d}_{self.e}({format_mults(self.mults)})"


@dataclass(frozen=True)
class PlanarSeriesSpec:
    """Plane curves of degree e with assigned fat base points (canonical form)."""

    e: int
    mults: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "mults", _validated_mults(self.mults))

    @property
    def degree(self) -> int:
        return sum(fat_degree(m) for m in self.mults)

    def __str__(self) -> str:
        return f"L_{self.e}({format_mults(self.mults)})"


@dataclass(frozen=True)
class CICurve:
    """The complete-intersection curve of surfaces of degrees s and t."""

    s: int
    t: int

    def __post_init__(self) -> None:
        if self.s < 1 or self.t < 1:
            raise ValueError(f"component degrees must be >= 1, got ({self.s}, {self.t})")

    def h0(self, k: int) -> int:
        return h0_curve(self.s, self.t, k)


@dataclass(frozen=True)
class RDivisorClass:
    """Real divisor class aH - sum b_i E_i on a blown-up surface."""

    a: int
    b: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError(f"class degree must be >= 1, got {self.a}")
        if any(x < 0 for x in self.b):
            raise ValueError("coefficients b_i must be nonnegative")


def h0_surface(d: int, e: int) -> int:
    """Sections of O(e) on a smooth degree-d surface in P^3; 0 for e < 0."""
    if d < 1:
        raise ValueError(f"surface degree must be >= 1, got {d}")
    if e < 0:
        return 0
    return c3(e + 3) - c3(e - d + 3)


def h0_curve(s: int, t: int, k: int) -> int:
    """Sections of O(k) on the complete intersection of degrees s, t; 0 for k < 0."""
    if s < 1 or t < 1:
        raise ValueError(f"component degrees must be >= 1, got ({s}, {t})")
    if k < 0:
        return 0
    return c3(k + 3) - c3(k - s + 3) - c3(k - t + 3) + c3(k - s - t + 3)


def fat_degree(m: int) -> int:
    """Degree C(m+1, 2) of the length conditions of an m-fold point on a surface."""
    if m < 0:
        raise ValueError(f"multiplicity must be >= 0, got {m}")
    return m * (m + 1) // 2


def delta_degree(m: int, n: int) -> int:
    """Degree of the tangency-enriched point scheme Delta(m, n): C(m+1,2) + n.

    Delta(m, 0) is the ordinary m-fold point.  Requires 0 <= n <= m.
    """
    if not 0 <= n <= m:
        raise ValueError(f"need 0 <= n <= m, got (m, n) = ({m}, {n})")
    return fat_degree(m) + n


def vdim(spec: SurfaceSeriesSpec) -> int:
    """Virtual (vector-space) dimension: section count minus imposed degree."""
    return h0_surface(spec.d, spec.e) - spec.degree


def edim(spec: SurfaceSeriesSpec) -> int:
    """Expected dimension max(vdim, 0)."""
    return max(vdim(spec), 0)


def _pair_weight(b) -> float | int:
    """b(b+1)/2, exact for integer b."""
    num = b * (b + 1)
    return num // 2 if isinstance(b, (int, np.integer)) else num / 2


def v_projective(d: int, cls: RDivisorClass):
    """Projective virtual dimension of a real divisor class on the blown-up surface.

    h0_surface(d, a) - 1 - sum b_i(b_i+1)/2; exact when the b_i are integers.
    """
    return h0_surface(d, cls.a) - 1 - sum(_pair_weight(b) for b in cls.b)


def _f_value(d: int, a: int) -> int:
    """Projective dimension of the full degree-a series: h0_surface(d, a) - 1."""
    if a < 0:
        raise ValueError(f"degree must be >= 0, got {a}")
    return h0_surface(d, a) - 1


def g_value(d: int, a: int) -> float:
    """Positive root g of g(g+1)/2 = f(a), f(a) = h0_surface(d, a) - 1.

    A single point of multiplicity g(a) would exactly consume the degree-a
    series; g measures series size on a square-root scale.
    """
    f = _f_value(d, a)
    return (-1.0 + math.sqrt(1.0 + 8.0 * f)) / 2.0


def scan_superadditivity(d: int, a_max: int) -> list[tuple[int, int]]:
    """All pairs a >= a' >= 1 with a + a' <= a_max violating g(a)+g(a') < g(a+a').

    Returns the violating pairs (a, a'), sorted.  The strict superadditivity is
    established only for d >= 5; smaller d still scans but callers should
    treat the result as informational.
    """
    if d < 2:
        raise ValueError(f"surface degree must be >= 2 for the scan, got {d}")
    if a_max < 2:
        raise ValueError(f"a_max must be >= 2, got {a_max}")
    g = [g_value(d, a) for a in range(a_max + 1)]
    failures = []
    for a in range(1, a_max):
        for ap in range(1, a + 1):
            if a + ap > a_max:
                break
            if not g[a] + g[ap] < g[a + ap]:
                failures.append((a, ap))
    return sorted(failures)


def scan_discrete_convexity(d: int, k_max: int) -> list[int]:
    """All k in [2, k_max] violating g(k+1) - g(k) > g(k) - g(k-1)."""
    if k_max < 2:
        raise ValueError(f"k_max must be >= 2, got {k_max}")
    g = [g_value(d, a) for a in range(k_max + 2)]
    return [k for k in range(2, k_max + 1) if not g[k + 1] - g[k] > g[k] - g[k - 1]]


# Multiplicity lists of the degree-2 and degree-1 classes with projective
# virtual dimension exactly zero on a surface of degree >= 5.
_SMALL_PAIR_CLASSES_A2: tuple[tuple[int, ...], ...] = (
    (3, 2),
    (2, 2, 2),
    (3, 1, 1, 1),
    (2, 2, 1, 1, 1),
    (2, 1, 1, 1, 1, 1, 1),
    (1,) * 9,
)
_SMALL_PAIR_CLASSES_A1: tuple[tuple[int, ...], ...] = ((2,), (1, 1, 1))


@dataclass(frozen=True)
class SmallPairsRow:
    """Worst-case result for one (class, class) pair in the small-pairs check."""

    a: int
    a_prime: int
    mults: tuple[int, ...]
    mults_prime: tuple[int, ...]
    min_v: int
    argmin_assignment: tuple[int, ...]
    required: str
    ok: bool


@dataclass(frozen=True)
class SmallPairsReport:
    rows: tuple[SmallPairsRow, ...]
    violations: tuple[SmallPairsRow, ...] = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "violations", tuple(r for r in self.rows if not r.ok)
        )

    @property
    def ok(self) -> bool:
        return not self.violations


def _assignment_values(
    d: int,
    a_sum: int,
    base: Sequence[int],
    other: Sequence[int],
    r: int,
) -> Iterable[tuple[int, tuple[int, ...]]]:
    """Yield (v, combined point multiplicities) over all placements of ``other``.

    ``base`` occupies points 0..len(base)-1; ``other`` ranges over all injective
    placements on r points, so every overlap pattern with ``base`` occurs.
    """
    f = _f_value(d, a_sum)
    for positions in itertools.permutations(range(r), len(other)):
        totals = list(base) + [0] * (r - len(base))
        for pos, m in zip(positions, other):
            totals[pos] += m
        v = f - sum(t * (t + 1) // 2 for t in totals if t)
        yield v, tuple(totals)


def check_small_pairs(d: int, r: int = 12) -> SmallPairsReport:
    """Check sum inequalities for all pairs of vdim-zero classes of degrees <= 2.

    For D of degree 2 and D' of degree 1 (both with projective vdim 0 on a
    degree-d surface, d >= 5), every joint placement of their multiplicities on
    r points must give v(D + D') >= 1.  For two degree-1 classes, v(D + D') > 0
    unless D = D' (same class on the same points), in which case v(2D) <= 0.
    """
    if d < 5:
        raise ValueError(f"the small-pairs inequalities require d >= 5, got {d}")
    if r < 9:
        raise ValueError(f"need r >= 9 points to realize every class, got {r}")

    rows: list[SmallPairsRow] = []
    for base in _SMALL_PAIR_CLASSES_A2:
        for other in _SMALL_PAIR_CLASSES_A1:
            worst = None
            for v, totals in _assignment_values(d, 3, base, other, r):
                if worst is None or v < worst[0]:
                    worst = (v, totals)
            assert worst is not None
            rows.append(
                SmallPairsRow(2, 1, base, other, worst[0], worst[1], ">= 1", worst[0] >= 1)
            )

    for base in _SMALL_PAIR_CLASSES_A1:
        for other in _SMALL_PAIR_CLASSES_A1:
            worst_diff = None
            equal_v = None
            # D = D' exactly when the placement doubles ``base`` in place.
            doubled = tuple(2 * m for m in base) + (0,) * (r - len(base))
            for v, totals in _assignment_values(d, 2, base, other, r):
                if base == other and totals == doubled:
                    equal_v = (v, totals)
                elif worst_diff is None or v < worst_diff[0]:
                    worst_diff = (v, totals)
            if worst_diff is not None:
                rows.append(
                    SmallPairsRow(
                        1, 1, base, other, worst_diff[0], worst_diff[1], "> 0",
                        worst_diff[0] > 0,
                    )
                )
            if equal_v is not None:
                rows.append(
                    SmallPairsRow(
                        1, 1, base, other, equal_v[0], equal_v[1], "<= 0 (D = D')",
                        equal_v[0] <= 0,
                    )
                )
    return SmallPairsReport(tuple(rows))


@dataclass(frozen=True)
class MinConfigReport:
    """Result of the randomized minimum search over constrained b-vectors."""

    d: int
    a: int
    a_prime: int
    r: int
    samples: int
    seed: int
    min_value: float
    single_point_value: float
    argmin_b: tuple[float, ...]
    argmin_b_prime: tuple[float, ...]
    argmin_distance: float

    @property
    def ok(self) -> bool:
        return self.min_value >= self.single_point_value - 1e-6


def _scale_to_constraint(u: np.ndarray, target: float) -> np.ndarray:
    """Scale rows of u >= 0 so sum of b(b+1)/2 equals target, by bisection."""
    lo = np.zeros(u.shape[0])
    hi = np.ones(u.shape[0])

    def h(lam: np.ndarray) -> np.ndarray:
        b = u * lam[:, None]
        return 0.5 * (b * b + b).sum(axis=1)

    for _ in range(200):
        mask = h(hi) < target
        if not mask.any():
            break
        hi[mask] *= 2.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        small = h(mid) < target
        lo[small] = mid[small]
        hi[~small] = mid[~small]
    return u * (0.5 * (lo + hi))[:, None]


def randomized_min_config(
    d: int,
    a: int,
    a_prime: int,
    r: int,
    samples: int = 10_000,
    seed: int = 0,
) -> MinConfigReport:
    """Randomized check that v(D + D') is minimized at a single-point configuration.

    Samples pairs of nonnegative multiplicity vectors b, b' of length r lying on
    the constraint surfaces v(aH - sum b_i E_i) = 0 and v(a'H - sum b'_i E_i) = 0,
    evaluates v of the sum class, and compares the sampled minimum against the
    value at the configuration concentrating g(a) and g(a') at one shared point.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if samples < 1:
        raise ValueError(f"need samples >= 1, got {samples}")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed))
    f_a = float(_f_value(d, a))
    f_ap = float(_f_value(d, a_prime))
    f_sum = float(_f_value(d, a + a_prime))

    u1 = rng.random((samples, r)) + 1e-12
    u2 = rng.random((samples, r)) + 1e-12
    b1 = _scale_to_constraint(u1, f_a)
    b2 = _scale_to_constraint(u2, f_ap)
    total = b1 + b2
    values = f_sum - 0.5 * ((total * total + total).sum(axis=1))
    idx = int(np.argmin(values))

    g_a, g_ap = g_value(d, a), g_value(d, a_prime)
    g_tot = g_a + g_ap
    single_point = f_sum - 0.5 * (g_tot * g_tot + g_tot)

    dist = min(
        math.sqrt(
            float(((b1[idx] - g_a * np.eye(r)[i]) ** 2).sum())
            + float(((b2[idx] - g_ap * np.eye(r)[i]) ** 2).sum())
        )
        for i in range(r)
    )
    return MinConfigReport(
        d=d,
        a=a,
        a_prime=a_prime,
        r=r,
        samples=samples,
        seed=seed,
        min_value=float(values[idx]),
        single_point_value=float(single_point),
        argmin_b=tuple(float(x) for x in b1[idx]),
        argmin_b_prime=tuple(float(x) for x in b2[idx]),
        argmin_distance=float(dist),
    )


def parse_mults(text: str) -> tuple[int, ...]:
    """Parse '4^2,3,2^3' into (4, 4, 3, 2, 2, 2); empty string gives ()."""
    text = text.strip()
    if not text:
        return ()
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "^" in part:
            base, _, count = part.partition("^")
            out.extend([int(base)] * int(count))
        else:
            out.append(int(part))
    return tuple(sorted(out, reverse=True))


def format_mults(mults: Sequence[int]) -> str:
    """Format (4, 4, 3) as '4^2,3' (descending, exponent notation)."""
    if not mults:
        return ""
    runs: list[tuple[int, int]] = []
    for m in sorted(mults, reverse=True):
        if runs and runs[-1][0] == m:
            runs[-1] = (m, runs[-1][1] + 1)
        else:
            runs.append((m, 1))
    return ",".join(f"{m}^{k}" if k > 1 else f"{m}" for m, k in runs)
