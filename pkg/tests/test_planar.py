"""Planar reduction engine: splits, quadratic transforms, classification."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bruteforce_planar_dim
from fatpoints.dims import PlanarSeriesSpec
from fatpoints.planar import (
    UNCONDITIONAL_MAX_MULT,
    StepKind,
    classify_planar,
    cremona,
    is_standard,
    planar_edim,
    planar_vdim,
    reduce_series,
    split_line,
    terminal_dim,
)

small_specs = st.builds(
    PlanarSeriesSpec,
    st.integers(min_value=0, max_value=14),
    st.lists(st.integers(min_value=1, max_value=9), max_size=8).map(tuple),
)


class TestStandardness:
    def test_examples(self):
        assert is_standard(PlanarSeriesSpec(6, (2, 2, 2)))
        assert not is_standard(PlanarSeriesSpec(8, (4, 4, 4, 4, 4)))
        assert is_standard(PlanarSeriesSpec(3, ()))
        assert is_standard(PlanarSeriesSpec(0, ()))

    def test_negative_degree_is_not_standard(self):
        assert not is_standard(PlanarSeriesSpec(-1, ()))

    def test_zero_padding(self):
        assert is_standard(PlanarSeriesSpec(4, (2, 2)))
        assert not is_standard(PlanarSeriesSpec(3, (2, 2)))


class TestSplitLine:
    def test_examples(self):
        assert split_line(PlanarSeriesSpec(2, (2, 2))) == PlanarSeriesSpec(1, (1, 1))
        assert split_line(PlanarSeriesSpec(0, (1,))) == PlanarSeriesSpec(-1, ())
        assert split_line(PlanarSeriesSpec(6, (4, 3, 3, 3))) == PlanarSeriesSpec(
            5, (3, 3, 3, 2)
        )

    def test_precondition(self):
        with pytest.raises(ValueError):
            split_line(PlanarSeriesSpec(6, (2, 2, 2)))

    def test_vdim_change_equals_overshoot(self):
        for e, mults in [(2, (2, 2)), (3, (3, 2)), (5, (4, 4, 1)), (1, (1, 1))]:
            spec = PlanarSeriesSpec(e, mults)
            overshoot = mults[0] + (mults[1] if len(mults) > 1 else 0) - (e + 1)
            assert planar_vdim(split_line(spec)) == planar_vdim(spec) + overshoot


class TestCremona:
    def test_examples(self):
        assert cremona(PlanarSeriesSpec(8, (4, 4, 4, 4, 4))) == PlanarSeriesSpec(4, (4, 4))
        assert cremona(PlanarSeriesSpec(12, (6, 6, 4, 4, 4, 4, 4))) == PlanarSeriesSpec(
            8, (4, 4, 4, 4, 2, 2)
        )

    def test_rejects_standard_input(self):
        with pytest.raises(ValueError):
            cremona(PlanarSeriesSpec(6, (2, 2, 2)))

    def test_rejects_forced_line(self):
        with pytest.raises(ValueError):
            cremona(PlanarSeriesSpec(2, (2, 2)))

    def test_preserves_vdim(self):
        cases = [
            (8, (4, 4, 4, 4, 4)),
            (12, (6, 6, 4, 4, 4, 4, 4)),
            (12, (6, 6, 4, 4, 4, 4, 2, 2, 2)),
            (10, (4, 4, 4, 3, 3)),
        ]
        for e, mults in cases:
            spec = PlanarSeriesSpec(e, mults)
            assert planar_vdim(cremona(spec)) == planar_vdim(spec)

    def test_outputs_stay_nonnegative(self):
        out = cremona(PlanarSeriesSpec(8, (4, 4, 4, 2, 2)))
        assert all(m >= 1 for m in out.mults)


class TestReduce:
    def test_empties_out(self):
        trace = reduce_series(PlanarSeriesSpec(6, (4, 3, 3, 3)))
        assert trace.terminal.e < 0
        assert terminal_dim(trace.terminal) == 0

    def test_reaches_degree_zero(self):
        trace = reduce_series(PlanarSeriesSpec(8, (4, 4, 4, 4, 4)))
        assert trace.terminal == PlanarSeriesSpec(0, ())
        assert terminal_dim(trace.terminal) == 1

    def test_standard_input_identity(self):
        spec = PlanarSeriesSpec(6, (2, 2, 2))
        trace = reduce_series(spec)
        assert trace.steps == ()
        assert trace.terminal == spec

    def test_trace_replays(self):
        for e, mults in [(8, (4,) * 5), (12, (6, 6, 4, 4, 4, 4, 2, 2, 2)), (6, (4, 3, 3, 3))]:
            trace = reduce_series(PlanarSeriesSpec(e, mults))
            cur = trace.initial
            for step in trace.steps:
                assert step.before == cur
                if step.kind == StepKind.LINE_SPLIT:
                    cur = split_line(cur)
                elif step.kind == StepKind.CREMONA:
                    cur = cremona(cur)
                assert step.after == cur
            assert cur == trace.terminal

    def test_degree_strictly_decreases(self):
        trace = reduce_series(PlanarSeriesSpec(12, (6, 6, 4, 4, 4, 4, 2, 2, 2)))
        degrees = [trace.initial.e] + [s.after.e for s in trace.steps]
        assert all(a > b for a, b in zip(degrees, degrees[1:]))

    @given(small_specs)
    @settings(max_examples=120, deadline=None)
    def test_terminates_standard_or_empty(self, spec):
        trace = reduce_series(spec)
        assert trace.terminal.e < 0 or is_standard(trace.terminal)

    @given(small_specs)
    @settings(max_examples=120, deadline=None)
    def test_multiplicities_never_increase(self, spec):
        trace = reduce_series(spec)
        cap = max(spec.mults, default=0)
        assert trace.max_multiplicity <= max(cap, 0)


class TestTerminalDim:
    def test_rules(self):
        assert terminal_dim(PlanarSeriesSpec(-1, ())) == 0
        assert terminal_dim(PlanarSeriesSpec(0, ())) == 1
        assert terminal_dim(PlanarSeriesSpec(4, (2, 1))) == planar_vdim(
            PlanarSeriesSpec(4, (2, 1))
        )

    def test_rejects_nonterminal(self):
        with pytest.raises(ValueError):
            terminal_dim(PlanarSeriesSpec(8, (4, 4, 4, 4, 4)))

    def test_standard_with_negative_vdim_is_empty(self):
        spec = PlanarSeriesSpec(3, (1,) * 12)
        assert is_standard(spec)
        assert planar_vdim(spec) < 0
        assert terminal_dim(spec) == 0


class TestClassify:
    def test_special_examples(self):
        v = classify_planar(PlanarSeriesSpec(8, (4, 4, 4, 4, 4)))
        assert (v.dim, v.special, v.confidence) == (1, True, "unconditional")
        v = classify_planar(PlanarSeriesSpec(2, (2, 2)))
        assert (v.dim, v.special) == (1, True)
        v = classify_planar(PlanarSeriesSpec(4, (2, 2, 2, 2, 2)))
        assert (v.dim, v.special) == (1, True)

    def test_nonspecial_examples(self):
        for e in range(6):
            v = classify_planar(PlanarSeriesSpec(e, ()))
            assert v.dim == (e + 1) * (e + 2) // 2
            assert not v.special

    def test_deep_reduction_chain(self):
        # Three quadratic transforms and two splits end at one section.
        v = classify_planar(PlanarSeriesSpec(12, (6, 6, 4, 4, 4, 4, 2, 2, 2)))
        assert (v.dim, v.special, v.confidence) == (1, True, "unconditional")
        kinds = [s.kind for s in v.trace.steps]
        assert kinds == [
            StepKind.CREMONA,
            StepKind.CREMONA,
            StepKind.CREMONA,
            StepKind.LINE_SPLIT,
            StepKind.LINE_SPLIT,
        ]

    def test_confidence_tagging(self):
        assert classify_planar(PlanarSeriesSpec(12, (12,))).confidence == "shgh-conditional"
        assert (
            classify_planar(PlanarSeriesSpec(11, (11,))).confidence == "unconditional"
        )
        assert UNCONDITIONAL_MAX_MULT == 11

    @given(small_specs)
    @settings(max_examples=120, deadline=None)
    def test_dim_at_least_expected(self, spec):
        v = classify_planar(spec)
        assert v.dim >= planar_edim(spec)
        assert v.special == (v.dim != planar_edim(spec))

    def test_agrees_with_rank_oracle_on_small_cases(self):
        # Exhaustive small sweep, cross-checked against an independent
        # random-evaluation rank computation.
        for e in range(0, 5):
            for mults in itertools.chain(
                [()],
                itertools.combinations_with_replacement((3, 2, 2, 1, 1), 3),
            ):
                spec = PlanarSeriesSpec(e, mults)
                got = classify_planar(spec).dim
                ref = bruteforce_planar_dim(e, sorted(mults, reverse=True), seed=11)
                assert got == ref, f"{spec}: engine {got} vs rank {ref}"
