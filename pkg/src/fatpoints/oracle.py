"""Ground-truth dimensions by exact rank over a prime field.

A random surface instance realizes "general surface", random smooth points
realize "general points", and the dimension of a series is the kernel
dimension of its condition matrix minus the count of monomial multiples of
the surface form.  A single instance achieving the expected dimension
certifies nonspeciality of the general series (a nonzero maximal minor stays
nonzero under specialization); persistent excess across instances is reported
as instance-level evidence of speciality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .dims import SurfaceSeriesSpec, c3, delta_degree, edim, fat_degree, h0_surface
from .jets import JetChart, germ_rows, jet_parametrize, monomials_of_degree
from .kernels import MAX_SERIES_PRIME, rank_mod_p
from .modp import is_prime, lagrange_interpolate, rational_roots

__all__ = [
    "BudgetExceeded",
    "RetriesExhausted",
    "DichotomyViolation",
    "OracleConfig",
    "SurfaceInstance",
    "Fat",
    "Delta",
    "ImposedScheme",
    "OracleVerdict",
    "CrossPrimeVerdict",
    "MAX_MATRIX_COLUMNS",
    "random_surface",
    "sample_surface_point",
    "random_tangent_direction",
    "condition_rows",
    "series_dim",
    "oracle_verdict",
    "cross_prime_verdict",
    "delta_condition_count",
    "OracleSession",
]

#: Columns are ambient degree-e monomials; beyond this the dense elimination
#: is out of scope and the caller is told explicitly.
MAX_MATRIX_COLUMNS = 2000


class BudgetExceeded(RuntimeError):
    """Condition matrix larger than the supported dense-elimination budget."""


class RetriesExhausted(RuntimeError):
    """Point sampling failed repeatedly: modulus too small or instance bad."""


class DichotomyViolation(AssertionError):
    """A tangency scheme imposed conditions outside the proven dichotomy."""


@dataclass(frozen=True)
class OracleConfig:
    """Reproducible oracle run parameters."""

    p: int = 32003
    seed: int = 0
    trials: int = 3
    max_retries: int = 200

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"modulus must be prime, got {self.p}")
        if self.p < 101:
            raise ValueError(f"modulus too small for stable sampling: {self.p}")
        if self.p > MAX_SERIES_PRIME:
            raise ValueError(f"modulus exceeds the series kernels: {self.p}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.max_retries < 1:
            raise ValueError(f"max_retries must be >= 1, got {self.max_retries}")


@dataclass(frozen=True)
class SurfaceInstance:
    """A concrete surface of degree d with prime-field coefficients."""

    d: int
    p: int
    exps: tuple[tuple[int, int, int, int], ...]
    coeffs: tuple[int, ...]

    def evaluate(self, point: Sequence[int]) -> int:
        total = 0
        for mono, c in zip(self.exps, self.coeffs):
            term = c
            for x, e in zip(point, mono):
                if e:
                    term = term * pow(int(x) % self.p, e, self.p) % self.p
            total = (total + term) % self.p
        return total

    def gradient(self, point: Sequence[int]) -> tuple[int, int, int, int]:
        out = []
        pt = [int(x) % self.p for x in point]
        for j in range(4):
            total = 0
            for mono, c in zip(self.exps, self.coeffs):
                if mono[j] == 0:
                    continue
                term = c * mono[j] % self.p
                for i, e in enumerate(mono):
                    ee = e - (1 if i == j else 0)
                    if ee:
                        term = term * pow(pt[i], ee, self.p) % self.p
                total = (total + term) % self.p
            out.append(total)
        return tuple(out)


@dataclass(frozen=True)
class Fat:
    """An ordinary point of multiplicity m."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"multiplicity must be >= 1, got {self.m}")

    @property
    def degree(self) -> int:
        return fat_degree(self.m)

    @property
    def jet_order(self) -> int:
        return max(self.m - 1, 1)


@dataclass(frozen=True)
class Delta:
    """A multiplicity-m point with n tangency refinements along a direction."""

    m: int
    n: int
    direction: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= self.m:
            raise ValueError(f"need 1 <= n <= m, got (m, n) = ({self.m}, {self.n})")
        if not any(self.direction):
            raise ValueError("direction must be a nonzero vector")

    @property
    def degree(self) -> int:
        return delta_degree(self.m, self.n)

    @property
    def jet_order(self) -> int:
        return self.m


@dataclass(frozen=True)
class ImposedScheme:
    """A punctual condition scheme supported at one surface point."""

    point: tuple[int, int, int, int]
    kind: Fat | Delta


@dataclass(frozen=True)
class OracleVerdict:
    spec: SurfaceSeriesSpec
    config: OracleConfig
    trial_dims: tuple[int, ...]
    observed_dim: int
    expected_dim: int
    certified: str  # "nonspecial-certified" | "special-at-instances" | "inconclusive"


@dataclass(frozen=True)
class CrossPrimeVerdict:
    first: OracleVerdict
    second: OracleVerdict
    agreed: bool
    observed_dim: int
    certified: str


def _projective_key(point: Sequence[int], p: int) -> tuple[int, ...]:
    pt = [int(x) % p for x in point]
    lead = next((x for x in pt if x), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    inv = pow(lead, -1, p)
    return tuple(x * inv % p for x in pt)


def random_surface(d: int, cfg: OracleConfig, rng: np.random.Generator | None = None) -> SurfaceInstance:
    """Uniformly random degree-d form over F_p (nonzero), seeded by cfg."""
    if d < 1:
        raise ValueError(f"surface degree must be >= 1, got {d}")
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(entropy=(cfg.seed, d, cfg.p)))
    exps = monomials_of_degree(d)
    while True:
        coeffs = tuple(int(x) for x in rng.integers(0, cfg.p, size=len(exps)))
        if any(coeffs):
            return SurfaceInstance(d=d, p=cfg.p, exps=exps, coeffs=coeffs)


def sample_surface_point(
    instance: SurfaceInstance,
    cfg: OracleConfig,
    rng: np.random.Generator,
    avoid: Iterable[tuple[int, ...]] = (),
) -> tuple[int, int, int, int]:
    """A random smooth rational point of the instance, off the given points.

    Draws random lines, restricts the form along each line by interpolation
    through d + 1 parameter values, extracts the rational roots, and returns
    the first root point with nonzero gradient.
    """
    p = instance.p
    taken = {_projective_key(pt, p) for pt in avoid}
    for _ in range(cfg.max_retries):
        a = [int(x) for x in rng.integers(0, p, size=4)]
        b = [int(x) for x in rng.integers(0, p, size=4)]
        if not any(a) or not any(b):
            continue
        ts = list(range(instance.d + 1))
        ys = [instance.evaluate([(ai + t * bi) % p for ai, bi in zip(a, b)]) for t in ts]
        poly = lagrange_interpolate(ts, ys, p)
        if not poly:
            continue  # line inside the surface: resample
        roots = rational_roots(poly, p, rng)
        order = rng.permutation(len(roots)) if roots else []
        for idx in order:
            t0 = roots[int(idx)]
            point = tuple((ai + t0 * bi) % p for ai, bi in zip(a, b))
            if not any(point):
                continue
            if _projective_key(point, p) in taken:
                continue
            if any(instance.gradient(point)):
                return point
    raise RetriesExhausted(
        f"no smooth rational point found in {cfg.max_retries} line draws (p = {p})"
    )


def random_tangent_direction(
    instance: SurfaceInstance,
    point: Sequence[int],
    rng: np.random.Generator,
) -> tuple[int, int, int, int]:
    """A random tangent vector at the point, independent of the point itself.

    Solves gradient . v = 0 among vectors supported off one pivot coordinate
    of the point, so the result is never radial.
    """
    p = instance.p
    key = _projective_key(point, p)
    grad = instance.gradient(key)
    if not any(grad):
        raise ValueError("point is singular: no tangent plane")
    c_idx = next(i for i in range(4) if key[i])
    free = [i for i in range(4) if i != c_idx]
    # On the surface the gradient pairs to zero with the point itself, so it
    # cannot be concentrated on the pivot coordinate alone.
    gk = next((i for i in free if grad[i]), None)
    if gk is None:
        raise ValueError("gradient concentrated on the pivot: point not smooth")
    for _ in range(64):
        v = [0, 0, 0, 0]
        for i in free:
            v[i] = int(rng.integers(0, p))
        rest = sum(grad[i] * v[i] for i in free if i != gk) % p
        v[gk] = (-rest) * pow(grad[gk], -1, p) % p
        if any(v) and sum(grad[i] * v[i] for i in range(4)) % p == 0:
            return tuple(v)
    raise RetriesExhausted("could not sample a tangent direction")


def _rows_for_scheme(
    instance: SurfaceInstance,
    e: int,
    scheme: ImposedScheme,
    rng: np.random.Generator,
    order: int | None = None,
) -> np.ndarray:
    kind = scheme.kind
    direction = kind.direction if isinstance(kind, Delta) else None
    chart_order = max(order if order is not None else 0, kind.jet_order)
    chart = jet_parametrize(
        instance, scheme.point, chart_order, direction=direction, rng=rng
    )
    rows = germ_rows(chart, e, max_degree=kind.m if isinstance(kind, Delta) else kind.m - 1)
    if isinstance(kind, Fat):
        return rows[: fat_degree(kind.m)]
    return rows[: fat_degree(kind.m) + kind.n]


def condition_rows(
    instance: SurfaceInstance,
    e: int,
    scheme: ImposedScheme,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Condition-matrix rows of one scheme: columns are degree-e monomials."""
    if instance.evaluate(scheme.point) != 0:
        raise ValueError("scheme support does not lie on the surface")
    if rng is None:
        rng = np.random.default_rng(0)
    return _rows_for_scheme(instance, e, scheme, rng)


def _check_budget(e: int) -> int:
    ncols = c3(e + 3)
    if ncols > MAX_MATRIX_COLUMNS:
        raise BudgetExceeded(
            f"degree {e} needs {ncols} columns, budget is {MAX_MATRIX_COLUMNS}"
        )
    return ncols


def series_dim(
    instance: SurfaceInstance,
    e: int,
    schemes: Sequence[ImposedScheme],
    rng: np.random.Generator | None = None,
) -> int:
    """Dimension of sections of O(e) on the instance vanishing on the schemes.

    Kernel dimension of the stacked condition rows, minus the degree-(e - d)
    monomial count (multiples of the surface form vanish identically).
    """
    ncols = _check_budget(e)
    if e < 0:
        return 0
    if rng is None:
        rng = np.random.default_rng(0)
    keys = [_projective_key(s.point, instance.p) for s in schemes]
    if len(set(keys)) != len(keys):
        raise ValueError("scheme supports must be pairwise distinct points")
    blocks = []
    for scheme in schemes:
        if instance.evaluate(scheme.point) != 0:
            raise ValueError("scheme support does not lie on the surface")
        blocks.append(_rows_for_scheme(instance, e, scheme, rng))
    if blocks:
        matrix = np.vstack(blocks)
        rank = rank_mod_p(matrix, instance.p)
    else:
        rank = 0
    dim = (ncols - rank) - c3(e - instance.d + 3)
    assert dim >= 0, "kernel fell below the surface-multiple floor"
    return dim


def _spec_dim_on_instance(
    spec: SurfaceSeriesSpec,
    instance: SurfaceInstance,
    cfg: OracleConfig,
    rng: np.random.Generator,
) -> int:
    points: list[tuple[int, int, int, int]] = []
    for _ in spec.mults:
        points.append(sample_surface_point(instance, cfg, rng, avoid=points))
    schemes = [
        ImposedScheme(point=pt, kind=Fat(m)) for pt, m in zip(points, spec.mults)
    ]
    return series_dim(instance, spec.e, schemes, rng)


def oracle_verdict(spec: SurfaceSeriesSpec, cfg: OracleConfig) -> OracleVerdict:
    """Observed dimension over independent random instances.

    The reported dimension is the minimum across trials; reaching the
    expected dimension on any instance certifies the general series
    nonspecial, while a uniform excess is evidence of speciality at the
    tested instances.
    """
    _check_budget(spec.e)
    dims = []
    for trial in range(cfg.trials):
        rng = np.random.default_rng(
            np.random.SeedSequence(entropy=(cfg.seed, cfg.p, trial))
        )
        instance = random_surface(spec.d, cfg, rng)
        dims.append(_spec_dim_on_instance(spec, instance, cfg, rng))
    observed = min(dims)
    expected = edim(spec)
    if observed == expected:
        certified = "nonspecial-certified"
    elif all(d > expected for d in dims):
        certified = "special-at-instances"
    else:
        certified = "inconclusive"
    return OracleVerdict(
        spec=spec,
        config=cfg,
        trial_dims=tuple(dims),
        observed_dim=observed,
        expected_dim=expected,
        certified=certified,
    )


def cross_prime_verdict(
    spec: SurfaceSeriesSpec, cfg: OracleConfig, p2: int
) -> CrossPrimeVerdict:
    """Verdicts at two distinct primes, requiring agreement to certify."""
    if p2 == cfg.p:
        raise ValueError("second modulus must differ from the first")
    first = oracle_verdict(spec, cfg)
    second = oracle_verdict(
        spec,
        OracleConfig(p=p2, seed=cfg.seed, trials=cfg.trials, max_retries=cfg.max_retries),
    )
    agreed = first.observed_dim == second.observed_dim
    certified = first.certified if (agreed and first.certified == second.certified) else "inconclusive"
    return CrossPrimeVerdict(
        first=first,
        second=second,
        agreed=agreed,
        observed_dim=min(first.observed_dim, second.observed_dim),
        certified=certified,
    )


def delta_condition_count(d: int, e: int, m: int, n: int, cfg: OracleConfig) -> int:
    """Conditions imposed by a general tangency scheme on the full series.

    Returns h0 minus the dimension after imposing one Delta(m, n) at a random
    smooth point with a random tangent direction.  The dichotomy (the count
    equals min(scheme degree, h0) or equals the count of the full
    (m + 1)-fold point) is asserted only under its hypothesis: the plain
    m-fold point must impose its expected number of conditions on the same
    instance.  Where that fat point is itself special nothing is asserted.
    """
    if not 0 <= n <= m:
        raise ValueError(f"need 0 <= n <= m, got (m, n) = ({m}, {n})")
    _check_budget(e)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=(cfg.seed, cfg.p, d, e, m, n)))
    instance = random_surface(d, cfg, rng)
    point = sample_surface_point(instance, cfg, rng)
    h0 = h0_surface(d, e)

    if n == 0:
        kind: Fat | Delta = Fat(m)
    else:
        kind = Delta(m, n, random_tangent_direction(instance, point, rng))
    dim = series_dim(instance, e, [ImposedScheme(point, kind)], rng)
    drop = h0 - dim

    dim_next = series_dim(instance, e, [ImposedScheme(point, Fat(m + 1))], rng)
    drop_next = h0 - dim_next

    if n == 0:
        fat_drop = drop
    else:
        fat_drop = h0 - series_dim(instance, e, [ImposedScheme(point, Fat(m))], rng)
    if fat_drop != min(fat_degree(m), h0):
        return drop

    independent = min(delta_degree(m, n), h0)
    if drop not in (independent, drop_next):
        raise DichotomyViolation(
            f"Delta({m},{n}) on degree {d}, series degree {e}: drop {drop}, "
            f"independent count {independent}, full-point count {drop_next}"
        )
    return drop


class OracleSession:
    """Shared instance, point pool, and row cache for sweeping many specs.

    Sampling points and solving charts once per (surface, point) makes the
    per-spec cost a single rank computation, which is what the sweep-style
    acceptance checks need to stay inside their time budgets.
    """

    def __init__(
        self,
        d: int,
        e: int,
        cfg: OracleConfig,
        n_points: int,
        max_mult: int,
    ) -> None:
        self.d = d
        self.e = e
        self.cfg = cfg
        self.ncols = _check_budget(e)
        self.rng = np.random.default_rng(
            np.random.SeedSequence(entropy=(cfg.seed, cfg.p, d, e, n_points))
        )
        self.instance = random_surface(d, cfg, self.rng)
        self.points: list[tuple[int, int, int, int]] = []
        for _ in range(n_points):
            self.points.append(
                sample_surface_point(self.instance, cfg, self.rng, avoid=self.points)
            )
        order = max(max_mult - 1, 1)
        self._row_blocks = []
        for pt in self.points:
            chart = jet_parametrize(self.instance, pt, order, rng=self.rng)
            self._row_blocks.append(germ_rows(chart, e, max_degree=max_mult - 1))
        self.max_mult = max_mult

    def dim(self, mults: Sequence[int]) -> int:
        """Series dimension for one multiplicity tuple on the pooled points."""
        if len(mults) > len(self.points):
            raise ValueError(f"session holds {len(self.points)} points, need {len(mults)}")
        if any(m > self.max_mult for m in mults):
            raise ValueError(f"session caches rows up to multiplicity {self.max_mult}")
        blocks = [
            self._row_blocks[i][: fat_degree(m)] for i, m in enumerate(mults) if m >= 1
        ]
        if not blocks:
            rank = 0
        else:
            rank = rank_mod_p(np.vstack(blocks), self.cfg.p)
        dim = (self.ncols - rank) - c3(self.e - self.d + 3)
        assert dim >= 0, "kernel fell below the surface-multiple floor"
        return dim
