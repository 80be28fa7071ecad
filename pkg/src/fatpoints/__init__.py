"""Dimensions of linear series with fat base points on surfaces in P^3.

The package computes expected and actual dimensions of spaces of degree-e
surface sections vanishing to prescribed orders at general points, classifies
the special series on surfaces of low degree through planar reductions,
certifies dimensions independently by exact linear algebra over prime fields,
and replays the degeneration bookkeeping that settles surfaces of degree at
least four with base multiplicities up to four.
"""

from .degen import (
    DegenPlan,
    IdentityVerdict,
    InsufficientMultiplicity,
    LedgerTrace,
    PlanHypotheses,
    ResidualTipsSplit,
    formal_w,
    general_position_ok,
    h0_modified,
    plan_hypotheses,
    run_ledger,
    twist_thresholds,
    vdim_T,
    vdim_identity,
)
from .dims import (
    CICurve,
    MinConfigReport,
    PlanarSeriesSpec,
    RDivisorClass,
    SmallPairsReport,
    SurfaceSeriesSpec,
    c3,
    check_small_pairs,
    delta_degree,
    edim,
    fat_degree,
    format_mults,
    g_value,
    h0_curve,
    h0_surface,
    parse_mults,
    randomized_min_config,
    scan_discrete_convexity,
    scan_superadditivity,
    v_projective,
    vdim,
)
from .lowdeg import (
    LowdegVerdict,
    SpecialSeriesTable,
    classify_lowdeg,
    cubic_to_planar,
    enumerate_special,
    quadric_to_planar,
)
from .oracle import (
    BudgetExceeded,
    CrossPrimeVerdict,
    OracleConfig,
    OracleSession,
    OracleVerdict,
    RetriesExhausted,
    cross_prime_verdict,
    delta_condition_count,
    oracle_verdict,
)
from .planar import PlanarVerdict, ReductionTrace, classify_planar
from .staircase import (
    DeltaAligned,
    FatPoint,
    StaircaseIdeal,
    colon_rule,
    restrict_rule,
    scheme_degree,
    staircase_colon,
    staircase_restrict,
)
from .theoremb import CaseTrace, verify_theorem_B

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BudgetExceeded",
    "CICurve",
    "CaseTrace",
    "CrossPrimeVerdict",
    "DegenPlan",
    "DeltaAligned",
    "FatPoint",
    "IdentityVerdict",
    "InsufficientMultiplicity",
    "LedgerTrace",
    "LowdegVerdict",
    "MinConfigReport",
    "OracleConfig",
    "OracleSession",
    "OracleVerdict",
    "PlanHypotheses",
    "PlanarSeriesSpec",
    "PlanarVerdict",
    "RDivisorClass",
    "ReductionTrace",
    "ResidualTipsSplit",
    "RetriesExhausted",
    "SmallPairsReport",
    "SpecialSeriesTable",
    "StaircaseIdeal",
    "SurfaceSeriesSpec",
    "c3",
    "check_small_pairs",
    "classify_lowdeg",
    "classify_planar",
    "colon_rule",
    "cross_prime_verdict",
    "cubic_to_planar",
    "delta_condition_count",
    "delta_degree",
    "edim",
    "enumerate_special",
    "fat_degree",
    "formal_w",
    "format_mults",
    "g_value",
    "general_position_ok",
    "h0_curve",
    "h0_modified",
    "h0_surface",
    "oracle_verdict",
    "parse_mults",
    "plan_hypotheses",
    "quadric_to_planar",
    "randomized_min_config",
    "restrict_rule",
    "run_ledger",
    "scan_discrete_convexity",
    "scan_superadditivity",
    "scheme_degree",
    "staircase_colon",
    "staircase_restrict",
    "twist_thresholds",
    "v_projective",
    "vdim",
    "vdim_T",
    "vdim_identity",
    "verify_theorem_B",
]
