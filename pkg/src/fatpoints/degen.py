"""Degeneration bookkeeping for series split across a reducible surface.

A degeneration plan breaks a degree-(s + t) surface into components of
degrees s and t meeting in a curve C, distributes the fat points between the
components, and optionally twists by C a number of times.  Three calculations
drive everything built on top:

* the section count of the twisted bundle on the degree-t component,
* a virtual-dimension identity relating the split series to the original,
* a condition ledger that specializes points onto C band by band, splitting
  when a band's condition quota is exactly met and leaving residual punctual
  schemes governed by the staircase calculus.

The ledger is exact integer bookkeeping; the geometric hypotheses that make
it meaningful (an empty kernel series and a nonspecial gluing series on the
degree-s component) are checked separately through the classifiers for small
s or the rank oracle for larger s.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dims import SurfaceSeriesSpec, fat_degree, h0_curve, h0_surface, vdim
from .lowdeg import classify_lowdeg
from .staircase import DeltaAligned, FatPoint, OnCurveScheme, colon_rule, restrict_rule

__all__ = [
    "InsufficientMultiplicity",
    "ResidualTipsSplit",
    "DegenPlan",
    "PlanHypotheses",
    "IdentityVerdict",
    "LedgerEvent",
    "LedgerTrace",
    "h0_modified",
    "twist_thresholds",
    "vdim_T",
    "formal_w",
    "plan_hypotheses",
    "vdim_identity",
    "run_ledger",
    "general_position_ok",
]


class InsufficientMultiplicity(RuntimeError):
    """The queue ran out of points before a condition band was filled."""


class ResidualTipsSplit(RuntimeError):
    """A residual already on the curve would fill the band by itself.

    The split rules only cover bands completed by a fresh point from the
    queue; this situation is reported instead of guessed at.
    """


@dataclass(frozen=True)
class DegenPlan:
    """A splitting d = s + t with twist mu and a distribution of the points.

    ``gamma_s`` are the multiplicities specialized to the degree-s component,
    ``gamma_t`` those on the degree-t component; together they carry the
    original series' points.
    """

    e: int
    s: int
    t: int
    mu: int
    gamma_s: tuple[int, ...] = ()
    gamma_t: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.s < 1 or self.t < 1:
            raise ValueError(f"component degrees must be >= 1, got ({self.s}, {self.t})")
        if self.e < 0:
            raise ValueError(f"series degree must be >= 0, got {self.e}")
        if self.mu < 0:
            raise ValueError(f"twist must be >= 0, got {self.mu}")
        for name in ("gamma_s", "gamma_t"):
            mults = tuple(sorted((int(m) for m in getattr(self, name)), reverse=True))
            if any(m < 1 for m in mults):
                raise ValueError(f"multiplicities must be >= 1, got {mults}")
            object.__setattr__(self, name, mults)

    @property
    def d(self) -> int:
        return self.s + self.t

    def series_spec(self) -> SurfaceSeriesSpec:
        """The undegenerate series the plan is about."""
        return SurfaceSeriesSpec(d=self.d, e=self.e, mults=self.gamma_s + self.gamma_t)

    def as_dict(self) -> dict:
        return {
            "e": self.e,
            "s": self.s,
            "t": self.t,
            "mu": self.mu,
            "gamma_s": list(self.gamma_s),
            "gamma_t": list(self.gamma_t),
        }


def h0_modified(e: int, s: int, t: int, mu: int) -> int:
    """Sections of the mu-times twisted degree-e bundle on the t-component.

    Equals the plain surface count plus one band of curve sections per twist.
    """
    if s < 1 or t < 1:
        raise ValueError(f"component degrees must be >= 1, got ({s}, {t})")
    if mu < 0:
        raise ValueError(f"twist must be >= 0, got {mu}")
    return h0_surface(t, e) + sum(h0_curve(s, t, e - t * k) for k in range(1, mu + 1))


def twist_thresholds(e: int, s: int, t: int, mu: int) -> tuple[int, ...]:
    """Condition quota of each twist band, first twist first.

    The k-th twist must absorb all curve sections of degree e - t(mu-k+1).
    """
    if mu < 0:
        raise ValueError(f"twist must be >= 0, got {mu}")
    return tuple(h0_curve(s, t, e - t * (mu - k + 1)) for k in range(1, mu + 1))


def vdim_T(plan: DegenPlan, w: int) -> int:
    """Virtual dimension of the t-component series with a w-dimensional glue.

    Counts sections of the twisted bundle, minus the component's own fat
    points, minus the gluing conditions left after a w-dimensional match on
    the curve.
    """
    cap = h0_curve(plan.s, plan.t, plan.e - plan.t * plan.mu)
    if not 0 <= w <= cap:
        raise ValueError(f"gluing dimension must lie in [0, {cap}], got {w}")
    return (
        h0_modified(plan.e, plan.s, plan.t, plan.mu)
        - sum(fat_degree(m) for m in plan.gamma_t)
        - (cap - w)
    )


def formal_w(plan: DegenPlan) -> int:
    """Virtual dimension of the s-component gluing series.

    This is the value of w under the plan hypotheses; as a formula it needs
    no hypotheses and is what the arithmetic identity scan uses.
    """
    return h0_surface(plan.s, plan.e - plan.t * plan.mu) - sum(
        fat_degree(m) for m in plan.gamma_s
    )


@dataclass(frozen=True)
class PlanHypotheses:
    """Decidable side conditions for the virtual-dimension identity.

    ``kernel_empty``: the s-component series one extra twist down vanishes.
    ``w``: dimension of the s-component gluing series (None if undecided).
    ``nonspecial_s``: that series is nonspecial of nonnegative virtual
    dimension.  ``method`` records how each question was settled.
    """

    kernel_empty: bool | None
    w: int | None
    nonspecial_s: bool | None
    method: str

    @property
    def conclusive(self) -> bool:
        return None not in (self.kernel_empty, self.w, self.nonspecial_s)

    @property
    def ok(self) -> bool:
        return bool(self.conclusive and self.kernel_empty and self.nonspecial_s)


def _series_emptiness(s: int, e: int, mults: tuple[int, ...], cfg) -> tuple[bool | None, str]:
    """Whether the degree-e series on the s-component has dimension zero."""
    if e < 0 or h0_surface(s, e) == 0:
        return True, "capacity"
    if s <= 3:
        verdict = classify_lowdeg(SurfaceSeriesSpec(d=s, e=e, mults=mults))
        return verdict.dim == 0, "classifier"
    from .oracle import OracleConfig, oracle_verdict

    v = oracle_verdict(
        SurfaceSeriesSpec(d=s, e=e, mults=mults), cfg or OracleConfig()
    )
    if v.certified == "inconclusive":
        return None, "oracle"
    return v.observed_dim == 0, "oracle"


def _series_regularity(s: int, e: int, mults: tuple[int, ...], cfg) -> tuple[bool | None, int | None, str]:
    """(nonspecial with vdim >= 0, dimension, method) for the gluing series."""
    if e < 0 or h0_surface(s, e) == 0:
        # No sections at all: the series is empty (dimension zero), which is
        # regular exactly when nothing more was virtually expected.
        v = -sum(fat_degree(m) for m in mults)
        return v >= 0, 0, "capacity"
    spec = SurfaceSeriesSpec(d=s, e=e, mults=mults)
    if s <= 3:
        verdict = classify_lowdeg(spec)
        good = (not verdict.special) and vdim(spec) >= 0
        return good, verdict.dim, "classifier"
    from .oracle import OracleConfig, oracle_verdict

    v = oracle_verdict(spec, cfg or OracleConfig())
    if v.certified == "nonspecial-certified":
        return vdim(spec) >= 0, v.observed_dim, "oracle"
    if v.certified == "special-at-instances":
        return False, v.observed_dim, "oracle"
    return None, None, "oracle"


def plan_hypotheses(plan: DegenPlan, cfg=None) -> PlanHypotheses:
    """Decide the identity's hypotheses on the s-component.

    Uses the exact classifiers for s <= 3 and the rank oracle for larger s;
    anything the oracle cannot certify is left undecided rather than guessed.
    """
    e_kernel = plan.e - plan.t * (plan.mu + 1)
    e_glue = plan.e - plan.t * plan.mu
    kernel_empty, method_k = _series_emptiness(plan.s, e_kernel, plan.gamma_s, cfg)
    nonspecial, w, method_w = _series_regularity(plan.s, e_glue, plan.gamma_s, cfg)
    method = method_k if method_k == method_w else f"{method_k}+{method_w}"
    return PlanHypotheses(
        kernel_empty=kernel_empty, w=w, nonspecial_s=nonspecial, method=method
    )


@dataclass(frozen=True)
class IdentityVerdict:
    """Outcome of the virtual-dimension identity check for one plan."""

    plan: DegenPlan
    hypotheses: PlanHypotheses
    checked: bool
    holds: bool | None
    lhs: int | None
    rhs: int | None


def vdim_identity(plan: DegenPlan, cfg=None) -> IdentityVerdict:
    """Check vdim(original series) == vdim_T(plan, w) under the hypotheses.

    When the hypotheses fail or cannot be decided the identity is not
    asserted (the underlying statement is conditional), and the verdict says
    so instead of guessing.
    """
    hyp = plan_hypotheses(plan, cfg)
    if not hyp.ok:
        return IdentityVerdict(
            plan=plan, hypotheses=hyp, checked=False, holds=None, lhs=None, rhs=None
        )
    lhs = vdim(plan.series_spec())
    rhs = vdim_T(plan, hyp.w)
    return IdentityVerdict(
        plan=plan, hypotheses=hyp, checked=True, holds=lhs == rhs, lhs=lhs, rhs=rhs
    )


def general_position_ok(alpha: int, beta: int, t: int) -> bool:
    """Whether alpha fat and beta tangency residuals stay in general position.

    The bound is one less than the count of degree-2 sections on the
    t-component: each fat residual moves with 1 parameter and each tangency
    residual with 2.
    """
    if alpha < 0 or beta < 0:
        raise ValueError(f"counts must be >= 0, got ({alpha}, {beta})")
    if t < 1:
        raise ValueError(f"component degree must be >= 1, got {t}")
    return alpha + 2 * beta <= h0_surface(t, 2) - 1


@dataclass(frozen=True)
class LedgerEvent:
    """One step of the specialization ledger."""

    band: int  # index into thresholds
    action: str  # "restrict" | "specialize" | "split" | "colon"
    scheme: OnCurveScheme | None
    contributed: int
    residual: OnCurveScheme | None


@dataclass(frozen=True)
class LedgerTrace:
    """Full record of a ledger run.

    ``residuals`` is the on-curve state after the last processed band and
    ``remaining_queue`` whatever the queue still holds; ``general_position``
    is the position check on the residuals when a component degree was given,
    None otherwise.
    """

    thresholds: tuple[int, ...]
    events: tuple[LedgerEvent, ...]
    residuals: tuple[OnCurveScheme, ...]
    remaining_queue: tuple[int, ...]
    general_position: bool | None

    def as_dict(self) -> dict:
        return {
            "thresholds": list(self.thresholds),
            "events": [
                {
                    "band": ev.band,
                    "action": ev.action,
                    "scheme": str(ev.scheme) if ev.scheme else None,
                    "contributed": ev.contributed,
                    "residual": str(ev.residual) if ev.residual else None,
                }
                for ev in self.events
            ],
            "residuals": [str(s) for s in self.residuals],
            "remaining_queue": list(self.remaining_queue),
            "general_position": self.general_position,
        }


def _split_residual(m: int, need: int) -> OnCurveScheme | None:
    """Residual left by the fresh point that completes a band.

    The point had multiplicity m and the band still needed 1 <= need <= m
    conditions; the residual keeps multiplicity m - 1 with m - need tangency
    conditions along the curve (a plain point when the full multiplicity was
    used, nothing when a simple point finishes the band).
    """
    if m == 1:
        return None
    if need == m:
        return FatPoint(m - 1)
    return DeltaAligned(m - 1, m - need)


def run_ledger(
    queue: tuple[int, ...] | list[int],
    thresholds: tuple[int, ...] | list[int],
    t: int | None = None,
) -> LedgerTrace:
    """Specialize queue points onto the curve, band by band.

    Within each band the schemes already on the curve contribute their
    restriction degrees first, then fresh queue points contribute their full
    multiplicities until one of them exactly completes the band; that point's
    residual joins the curve and every other on-curve scheme is replaced by
    its curve-removal residual.  Raises InsufficientMultiplicity when the
    queue runs dry mid-band and ResidualTipsSplit when on-curve contributions
    alone would complete a band (outside the modeled rules).
    """
    queue = list(queue)
    thresholds = tuple(int(x) for x in thresholds)
    if any(x <= 0 for x in thresholds):
        raise ValueError(f"thresholds must be positive, got {thresholds}")
    if any(m < 1 for m in queue):
        raise ValueError(f"queue multiplicities must be >= 1, got {tuple(queue)}")

    on_curve: list[OnCurveScheme] = []
    events: list[LedgerEvent] = []

    for band, quota in enumerate(thresholds):
        need = quota
        for scheme in on_curve:
            c = restrict_rule(scheme)
            if c >= need:
                raise ResidualTipsSplit(
                    f"band {band}: on-curve {scheme} contributes {c} with only "
                    f"{need} conditions left"
                )
            need -= c
            events.append(
                LedgerEvent(band=band, action="restrict", scheme=scheme,
                            contributed=c, residual=None)
            )

        split_done = False
        while queue:
            m = queue.pop(0)
            if m < need:
                on_curve.append(FatPoint(m))
                events.append(
                    LedgerEvent(band=band, action="specialize", scheme=FatPoint(m),
                                contributed=m, residual=None)
                )
                need -= m
                continue
            residual = _split_residual(m, need)
            events.append(
                LedgerEvent(band=band, action="split", scheme=FatPoint(m),
                            contributed=need, residual=residual)
            )
            new_state: list[OnCurveScheme] = []
            for scheme in on_curve:
                reduced = colon_rule(scheme)
                events.append(
                    LedgerEvent(band=band, action="colon", scheme=scheme,
                                contributed=0, residual=reduced)
                )
                if reduced is not None:
                    new_state.append(reduced)
            if residual is not None:
                new_state.append(residual)
            on_curve = new_state
            split_done = True
            break
        if not split_done:
            raise InsufficientMultiplicity(
                f"band {band}: queue exhausted with {need} conditions unmet"
            )

    alpha = sum(1 for s in on_curve if isinstance(s, FatPoint))
    beta = sum(1 for s in on_curve if isinstance(s, DeltaAligned))
    flags = general_position_ok(alpha, beta, t) if t is not None else None
    return LedgerTrace(
        thresholds=thresholds,
        events=tuple(events),
        residuals=tuple(on_curve),
        remaining_queue=tuple(queue),
        general_position=flags,
    )
