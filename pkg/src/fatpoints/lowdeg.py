"""Series on surfaces of degree at most 3, via reduction to the plane.

Projection from a general point maps a degree-2 surface two-to-one to the
plane; series of degree e with assigned fat points correspond to planar series
of degree 2e with two extra e-fold points (the branch conic directions).  For
a degree-3 surface the blow-down of six general lines identifies series of
degree e with planar series of degree 3e with six extra e-fold points.  Both
maps preserve the virtual and the actual dimension, so the planar classifier
decides dimension and speciality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dims import SurfaceSeriesSpec, PlanarSeriesSpec, edim, fat_degree, h0_surface, vdim
from .planar import PlanarVerdict, classify_planar

__all__ = [
    "LowdegVerdict",
    "SpecialSeriesTable",
    "quadric_to_planar",
    "cubic_to_planar",
    "classify_lowdeg",
    "enumerate_special",
]


@dataclass(frozen=True)
class LowdegVerdict:
    spec: SurfaceSeriesSpec
    dim: int
    special: bool
    confidence: str
    planar: PlanarVerdict


@dataclass(frozen=True)
class SpecialSeriesTable:
    d: int
    e_max: int
    slack: int
    entries: tuple[LowdegVerdict, ...]

    def specs(self) -> tuple[SurfaceSeriesSpec, ...]:
        return tuple(v.spec for v in self.entries)


def quadric_to_planar(spec: SurfaceSeriesSpec) -> PlanarSeriesSpec:
    """Planar image of a degree-2 surface series: degree doubles, two e-fold points."""
    if spec.d != 2:
        raise ValueError(f"expected a degree-2 surface series, got {spec}")
    if spec.e < 0:
        raise ValueError(f"series degree must be >= 0, got {spec.e}")
    extra = (spec.e, spec.e) if spec.e >= 1 else ()
    return PlanarSeriesSpec(2 * spec.e, extra + spec.mults)


def cubic_to_planar(spec: SurfaceSeriesSpec) -> PlanarSeriesSpec:
    """Planar image of a degree-3 surface series: degree triples, six e-fold points."""
    if spec.d != 3:
        raise ValueError(f"expected a degree-3 surface series, got {spec}")
    if spec.e < 0:
        raise ValueError(f"series degree must be >= 0, got {spec.e}")
    extra = (spec.e,) * 6 if spec.e >= 1 else ()
    return PlanarSeriesSpec(3 * spec.e, extra + spec.mults)


def classify_lowdeg(spec: SurfaceSeriesSpec) -> LowdegVerdict:
    """Dimension and speciality for surfaces of degree 1, 2, or 3."""
    if spec.d == 1:
        planar = classify_planar(PlanarSeriesSpec(spec.e, spec.mults))
    elif spec.d == 2:
        planar = classify_planar(quadric_to_planar(spec))
    elif spec.d == 3:
        planar = classify_planar(cubic_to_planar(spec))
    else:
        raise ValueError(f"classify_lowdeg handles d <= 3, got {spec}")
    special = planar.dim != edim(spec)
    return LowdegVerdict(
        spec=spec,
        dim=planar.dim,
        special=special,
        confidence=planar.confidence,
        planar=planar,
    )


def _mult_multisets(budget: int, max_count_each: int = 64):
    """Multisets over {2, 3, 4} (as counts) with total imposed degree <= budget."""
    for a in range(min(budget // fat_degree(4), max_count_each) + 1):
        deg_a = a * fat_degree(4)
        for b in range((budget - deg_a) // fat_degree(3) + 1):
            deg_b = deg_a + b * fat_degree(3)
            for c in range((budget - deg_b) // fat_degree(2) + 1):
                yield (4,) * a + (3,) * b + (2,) * c


def enumerate_special(d: int, e_max: int, slack: int = 20) -> SpecialSeriesTable:
    """All special series with multiplicities in {2, 3, 4} on a degree-d surface.

    Scans 1 <= e <= e_max over multiplicity multisets whose imposed degree is
    at most h0 + slack; beyond that bound the series and all its extensions
    are empty and nonspecial, so the table saturates (stability under larger
    slack is asserted in the tests).
    """
    if d not in (2, 3):
        raise ValueError(f"enumeration covers surface degrees 2 and 3, got {d}")
    if e_max < 1:
        raise ValueError(f"e_max must be >= 1, got {e_max}")
    if slack < 0:
        raise ValueError(f"slack must be >= 0, got {slack}")
    entries: list[LowdegVerdict] = []
    for e in range(1, e_max + 1):
        budget = h0_surface(d, e) + slack
        for mults in _mult_multisets(budget):
            verdict = classify_lowdeg(SurfaceSeriesSpec(d, e, mults))
            if verdict.special:
                entries.append(verdict)
    entries.sort(key=lambda v: (v.spec.e, tuple(-m for m in v.spec.mults)))
    return SpecialSeriesTable(d=d, e_max=e_max, slack=slack, entries=tuple(entries))
