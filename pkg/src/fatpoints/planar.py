"""Planar series classifier: base-line splitting and quadratic transformations.

A planar series is standard when the three largest multiplicities are bounded
by the degree.  Non-standard series are reduced by repeatedly (1) dropping
nonpositive multiplicities, (2) splitting off base lines through the two
largest multiplicities, and (3) applying a quadratic (Cremona) transformation
centered at the three largest multiplicities.  Both moves preserve the actual
dimension of the series, and the dimension of a terminal standard series
equals its expected dimension by the planar multiplicity classification
(known unconditionally for multiplicities up to 11, conjectural above).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .dims import PlanarSeriesSpec, fat_degree

__all__ = [
    "StepKind",
    "ReductionStep",
    "ReductionTrace",
    "PlanarVerdict",
    "planar_vdim",
    "planar_edim",
    "is_standard",
    "split_line",
    "cremona",
    "reduce_series",
    "terminal_dim",
    "classify_planar",
    "UNCONDITIONAL_MAX_MULT",
]

#: Largest multiplicity for which the standard-series dimension statement is
#: a theorem rather than a conjecture.
UNCONDITIONAL_MAX_MULT = 11


class StepKind(str, Enum):
    """Reduction moves.  Multiplicities that reach zero are dropped as part of
    the move that zeroed them (specs are canonical, so a standalone
    DROP_NONPOSITIVE step only appears for externally built traces)."""

    LINE_SPLIT = "line_split"
    CREMONA = "cremona"
    DROP_NONPOSITIVE = "drop_nonpositive"


@dataclass(frozen=True)
class ReductionStep:
    """One reduction move: the spec before the move, the move, its parameters."""

    kind: StepKind
    before: PlanarSeriesSpec
    after: PlanarSeriesSpec
    indices: tuple[int, ...]
    amount: int = 0


@dataclass(frozen=True)
class ReductionTrace:
    initial: PlanarSeriesSpec
    steps: tuple[ReductionStep, ...]
    terminal: PlanarSeriesSpec

    @property
    def max_multiplicity(self) -> int:
        seen = list(self.initial.mults)
        for step in self.steps:
            seen.extend(step.after.mults)
        return max(seen, default=0)


@dataclass(frozen=True)
class PlanarVerdict:
    spec: PlanarSeriesSpec
    dim: int
    special: bool
    confidence: str  # "unconditional" | "shgh-conditional"
    trace: ReductionTrace


def planar_vdim(spec: PlanarSeriesSpec) -> int:
    """C(e+2, 2) minus the imposed degree; the plane case of the surface count."""
    e = spec.e
    h0 = (e + 2) * (e + 1) // 2 if e >= 0 else 0
    return h0 - spec.degree


def planar_edim(spec: PlanarSeriesSpec) -> int:
    return max(planar_vdim(spec), 0)


def _padded(spec: PlanarSeriesSpec) -> tuple[int, int, int]:
    m = spec.mults
    return (m[0] if len(m) > 0 else 0, m[1] if len(m) > 1 else 0, m[2] if len(m) > 2 else 0)


def is_standard(spec: PlanarSeriesSpec) -> bool:
    """True when e >= 0 and the three largest multiplicities sum to at most e."""
    if spec.e < 0:
        return False
    m1, m2, m3 = _padded(spec)
    return m1 + m2 + m3 <= spec.e


def _raw_transition(e: int, mults: tuple[int, ...]) -> PlanarSeriesSpec:
    """Build a spec from possibly-unsorted positive multiplicities."""
    return PlanarSeriesSpec(e, tuple(m for m in mults if m >= 1))


def split_line(spec: PlanarSeriesSpec) -> PlanarSeriesSpec:
    """Remove a base line through the two largest multiplicities.

    Requires m1 + m2 >= e + 1 (the line is forced into the base locus); the
    result has degree e - 1 and the two top multiplicities reduced by one.
    The actual dimension of the series is unchanged.
    """
    m1, m2, _ = _padded(spec)
    if m1 + m2 < spec.e + 1:
        raise ValueError(f"no forced base line on {spec}")
    rest = list(spec.mults)
    new = []
    for target in (m1, m2):
        if target > 0:
            rest.remove(target)
            new.append(target - 1)
    return _raw_transition(spec.e - 1, tuple(new) + tuple(rest))


def cremona(spec: PlanarSeriesSpec) -> PlanarSeriesSpec:
    """Quadratic transformation centered at the three largest multiplicities.

    Applies when m1 + m2 <= e < m1 + m2 + m3 with a = m1 + m2 + m3 - e; the
    degree drops to e - a and the three centers each drop by a.  Virtual and
    actual dimension are both preserved.
    """
    m1, m2, m3 = _padded(spec)
    e = spec.e
    if e < 0 or m1 + m2 > e:
        raise ValueError(f"top two multiplicities exceed the degree on {spec}")
    a = m1 + m2 + m3 - e
    if a <= 0:
        raise ValueError(f"{spec} is already standard")
    rest = list(spec.mults)
    new = []
    for target in (m1, m2, m3):
        if target > 0:
            rest.remove(target)
        new.append(target - a)
    return _raw_transition(e - a, tuple(new) + tuple(rest))


def reduce_series(spec: PlanarSeriesSpec) -> ReductionTrace:
    """Reduce to a standard series or to negative degree, recording every move."""
    steps: list[ReductionStep] = []
    cur = PlanarSeriesSpec(spec.e, spec.mults)

    def apply(kind: StepKind, nxt: PlanarSeriesSpec, indices: tuple[int, ...], amount: int = 0):
        nonlocal cur
        steps.append(ReductionStep(kind, cur, nxt, indices, amount))
        cur = nxt

    while True:
        m1, m2, _ = _padded(cur)
        if cur.e < 0:
            break
        if m1 + m2 >= cur.e + 1:
            apply(StepKind.LINE_SPLIT, split_line(cur), (0, 1))
            continue
        if is_standard(cur):
            break
        a = m1 + m2 + _padded(cur)[2] - cur.e
        apply(StepKind.CREMONA, cremona(cur), (0, 1, 2), a)
    return ReductionTrace(initial=spec, steps=tuple(steps), terminal=cur)


def terminal_dim(terminal: PlanarSeriesSpec) -> int:
    """Dimension of a terminal spec: 0 below degree 0, else max(vdim, 0).

    Only valid on standard specs or specs of negative degree (the outputs of
    :func:`reduce_series`).
    """
    if terminal.e < 0:
        return 0
    if not is_standard(terminal):
        raise ValueError(f"{terminal} is not a terminal spec")
    return max(planar_vdim(terminal), 0)


def classify_planar(spec: PlanarSeriesSpec) -> PlanarVerdict:
    """Dimension and speciality of a planar series at general points."""
    trace = reduce_series(spec)
    dim = terminal_dim(trace.terminal)
    special = dim != planar_edim(spec)
    confidence = (
        "unconditional" if trace.max_multiplicity <= UNCONDITIONAL_MAX_MULT else "shgh-conditional"
    )
    return PlanarVerdict(spec=spec, dim=dim, special=special, confidence=confidence, trace=trace)
