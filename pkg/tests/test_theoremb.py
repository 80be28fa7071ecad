"""Tests for the scripted strategy verifier for multiplicities up to four.

The three anchor traces are checked step by step, the routing of every
(surface degree, series degree) regime is pinned, and a mini sweep checks
conclusiveness with the rank oracle arbitrating a sample of verdicts.
"""

import json

import pytest

from fatpoints.dims import SurfaceSeriesSpec, edim, fat_degree, h0_surface, vdim
from fatpoints.oracle import OracleConfig, oracle_verdict
from fatpoints.staircase import DeltaAligned, FatPoint
from fatpoints.theoremb import CaseTrace, verify_theorem_B


class TestValidation:
    def test_surface_degree_below_four_rejected(self):
        with pytest.raises(ValueError):
            verify_theorem_B(3, 4, (2,))

    def test_series_degree_below_one_rejected(self):
        with pytest.raises(ValueError):
            verify_theorem_B(4, 0, (2,))

    def test_multiplicity_five_rejected(self):
        with pytest.raises(ValueError):
            verify_theorem_B(4, 4, (5,))

    def test_multiplicity_zero_rejected(self):
        with pytest.raises(ValueError):
            verify_theorem_B(4, 4, (2, 0))


class TestTwoQuadrupleAnchor:
    """Two quadruple points against degree-3 sections on the quartic."""

    def setup_method(self):
        self.trace = verify_theorem_B(4, 3, (4, 4))

    def test_route_and_verdict(self):
        assert self.trace.case == "two-quadruple-twist"
        assert self.trace.verdict == "nonspecial"
        assert self.trace.dim == 0

    def test_plan_twists_once_with_everything_on_the_big_component(self):
        plan = self.trace.plan
        assert (plan.s, plan.t, plan.mu) == (2, 2, 1)
        assert plan.gamma_s == ()
        assert plan.gamma_t == (4, 4)

    def test_single_band_splits_one_quadruple(self):
        ledger = self.trace.ledger
        assert ledger.thresholds == (4,)
        assert ledger.residuals == (FatPoint(3),)
        assert ledger.remaining_queue == (4,)

    def test_residual_branch_is_the_empty_quadric_series(self):
        (child,) = self.trace.children
        assert child.spec == SurfaceSeriesSpec(d=2, e=3, mults=(4, 3))
        assert child.dim == 0
        assert child.verdict == "nonspecial"


class TestThreeQuadrupleAnchor:
    """Three quadruples against degree-6 sections on the quartic, padded."""

    def setup_method(self):
        self.trace = verify_theorem_B(4, 6, (4, 4, 4))

    def test_route_and_verdict(self):
        assert self.trace.case == "full-twist-strategies"
        assert self.trace.verdict == "nonspecial"
        assert self.trace.dim == 44 == edim(self.trace.spec)

    def test_padded_to_zero_virtual_dimension(self):
        assert "padded with 44 simple points" in self.trace.steps[0]
        assert self.trace.plan.gamma_t == (4, 4, 4) + (1,) * 44
        assert sum(fat_degree(m) for m in self.trace.plan.gamma_t) == 74

    def test_three_bands_with_the_pinned_quotas(self):
        assert self.trace.ledger.thresholds == (1, 8, 16)

    def test_residual_schemes_after_three_splits(self):
        assert self.trace.ledger.residuals == (
            DeltaAligned(1, 1),
            FatPoint(2),
            FatPoint(3),
        )
        assert self.trace.ledger.remaining_queue == (1,) * 38

    def test_both_dichotomy_branches_settle(self):
        specs = {c.spec for c in self.trace.children}
        assert specs == {
            SurfaceSeriesSpec(d=2, e=6, mults=(3, 2) + (1,) * 38),
            SurfaceSeriesSpec(d=2, e=6, mults=(3, 2, 2) + (1,) * 38),
        }
        assert all(c.verdict == "nonspecial" for c in self.trace.children)


class TestLoneQuadrupleAnchor:
    """A single quadruple against degree-2 sections: the one special series."""

    def setup_method(self):
        self.trace = verify_theorem_B(5, 2, (4,))

    def test_restricts_down_to_the_cubic_classifier(self):
        assert self.trace.case == "restriction-chain"
        (child,) = self.trace.children
        assert child.spec == SurfaceSeriesSpec(d=3, e=2, mults=(4,))
        assert child.case == "low-degree-classifier"

    def test_special_with_dimension_one(self):
        assert self.trace.verdict == "special"
        assert self.trace.dim == 1
        assert edim(self.trace.spec) == 0

    def test_same_conclusion_for_every_surface_degree(self):
        for d in (4, 5, 6, 7):
            trace = verify_theorem_B(d, 2, (4,))
            assert trace.verdict == "special"
            assert trace.dim == 1


class TestTangencyDichotomy:
    """A branch may be special as long as it stays within its credit."""

    def setup_method(self):
        self.trace = verify_theorem_B(4, 4, (4, 4, 4, 3))

    def test_overall_verdict_is_nonspecial(self):
        assert self.trace.verdict == "nonspecial"
        assert self.trace.dim == 0

    def test_ledger_leaves_one_tangency_scheme(self):
        assert self.trace.ledger.residuals == (DeltaAligned(2, 2), FatPoint(3))
        assert self.trace.ledger.remaining_queue == (4, 3)

    def test_independent_branch_is_special_but_within_credit(self):
        by_spec = {c.spec.mults: c for c in self.trace.children}
        freed = by_spec[(4, 3, 3)]
        assert freed.verdict == "special"
        assert freed.dim == 4  # credit is deg Delta(2,2) = 5
        forced = by_spec[(4, 3, 3, 3)]
        assert forced.verdict == "nonspecial"
        assert forced.dim == 0


class TestCaseRouting:
    @pytest.mark.parametrize(
        "d, e, expected",
        [
            (4, 1, "restriction-chain"),
            (4, 2, "restriction-chain"),
            (4, 3, "exact-glue"),
            (4, 4, "double-twist"),
            (4, 5, "double-twist"),
            (4, 6, "full-twist-strategies"),
            (4, 7, "glue-window"),
            (4, 8, "glue-window"),
            (4, 12, "glue-window"),
            (5, 3, "restriction-chain"),
            (5, 4, "single-twist"),
            (5, 5, "single-twist"),
            (5, 6, "glue-window"),
            (6, 4, "restriction-chain"),
            (6, 5, "single-twist"),
            (6, 6, "glue-window"),
            (7, 5, "restriction-chain"),
            (7, 6, "glue-window"),
        ],
    )
    def test_regime_routing(self, d, e, expected):
        trace = verify_theorem_B(d, e, (3, 2))
        assert trace.case == expected

    def test_degree_three_with_two_quadruples_twists_instead_of_gluing(self):
        assert verify_theorem_B(4, 3, (4, 4, 2)).case == "two-quadruple-twist"
        assert verify_theorem_B(4, 3, (4, 2, 2)).case == "exact-glue"

    def test_restriction_chain_lands_in_the_main_cases_when_tall_enough(self):
        trace = verify_theorem_B(7, 4, (3, 3, 2))
        assert trace.case == "restriction-chain"
        (child,) = trace.children
        assert child.spec.d == 5  # degree drops to e + 1
        assert child.case == "single-twist"


class TestRecursionIntoSmallerSurfaces:
    def test_degree_six_window_verifies_on_a_degree_four_surface(self):
        trace = verify_theorem_B(6, 6, (4, 4, 4, 3, 3, 2))
        assert trace.case == "glue-window"
        assert trace.plan.t == 4
        assert trace.verdict == "nonspecial"
        for child in trace.children:
            assert child.spec.d == 4
            assert child.spec.e == 4  # series degree drops by the glue degree

    def test_padding_count_matches_virtual_dimension(self):
        spec = SurfaceSeriesSpec(d=4, e=6, mults=(2,))
        trace = verify_theorem_B(4, 6, (2,))
        assert f"padded with {vdim(spec)} simple points" in trace.steps[0]
        assert trace.verdict == "nonspecial"
        assert trace.dim == edim(spec) == vdim(spec)


class TestTraceSerialization:
    def test_round_trips_through_json(self):
        trace = verify_theorem_B(4, 6, (4, 4, 4))
        payload = json.loads(json.dumps(trace.as_dict()))
        assert payload["spec"] == "L^4_6(4^3)"
        assert payload["verdict"] == "nonspecial"
        assert payload["ledger"]["thresholds"] == [1, 8, 16]
        assert payload["ledger"]["residuals"] == ["Delta(1,1)", "Fat(2)", "Fat(3)"]
        assert [c["spec"] for c in payload["children"]] == [
            "L^2_6(3,2,1^38)",
            "L^2_6(3,2^2,1^38)",
        ]

    def test_plan_and_ledger_absent_for_classifier_terminals(self):
        payload = verify_theorem_B(5, 2, (4,)).as_dict()
        assert payload["plan"] is None
        assert payload["ledger"] is None
        assert len(payload["children"]) == 1


def _multisets(max_points):
    for a in range(max_points + 1):
        for b in range(max_points + 1 - a):
            for c in range(max_points + 1 - a - b):
                if a + b + c:
                    yield (4,) * a + (3,) * b + (2,) * c


class TestMiniSweep:
    """Fast subset of the acceptance sweep: quartic, at most six points."""

    def test_every_instance_is_settled(self):
        for e in range(1, 7):
            for mults in _multisets(6):
                trace = verify_theorem_B(4, e, mults)
                assert trace.verdict != "inconclusive", (e, mults, trace.reason)
                if trace.verdict == "special":
                    assert (e, mults) == (2, (4,)), (e, mults)

    def test_sampled_verdicts_match_the_rank_oracle(self):
        cfg = OracleConfig(p=32003, seed=0, trials=2)
        picks = [
            (4, 4, (4, 4, 4, 3)),
            (4, 5, (3, 3, 3, 3)),
            (5, 4, (4, 4)),
            (6, 5, (4, 4, 4, 3, 2)),
            (6, 6, (4, 4, 4, 3, 3, 2)),
        ]
        for d, e, mults in picks:
            trace = verify_theorem_B(d, e, mults)
            spec = SurfaceSeriesSpec(d=d, e=e, mults=mults)
            assert trace.verdict == "nonspecial"
            assert oracle_verdict(spec, cfg).observed_dim == edim(spec)
