"""Counting functions, dimension conventions, and the numeric inequality scans."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fatpoints.dims import (
    CICurve,
    PlanarSeriesSpec,
    RDivisorClass,
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


class TestCountingFunctions:
    def test_c3_truncates_below_three(self):
        assert [c3(n) for n in range(-2, 4)] == [0, 0, 0, 0, 0, 1]

    def test_c3_matches_binomial(self):
        for n in range(3, 25):
            assert c3(n) == math.comb(n, 3)

    def test_h0_surface_anchors(self):
        assert h0_surface(4, 5) == 52
        assert h0_surface(4, 2) == 10
        assert h0_surface(2, 6) == 49
        assert h0_surface(5, 1) == 4

    def test_h0_surface_negative_degree_is_zero(self):
        assert h0_surface(3, -1) == 0
        assert h0_surface(1, -5) == 0

    def test_h0_surface_closed_forms(self):
        for e in range(0, 12):
            assert h0_surface(2, e) == (e + 1) ** 2
            assert h0_surface(3, e) == (3 * e * e + 3 * e + 2) // 2
            assert h0_surface(1, e) == (e + 1) * (e + 2) // 2

    def test_h0_surface_below_surface_degree_is_ambient(self):
        for d in range(1, 8):
            for e in range(0, d):
                assert h0_surface(d, e) == math.comb(e + 3, 3)

    def test_h0_surface_rejects_bad_degree(self):
        with pytest.raises(ValueError):
            h0_surface(0, 3)

    def test_h0_curve_anchors(self):
        assert h0_curve(1, 4, 6) == 22
        assert h0_curve(2, 2, 2) == 8
        assert h0_curve(2, 2, 4) == 16
        assert h0_curve(2, 2, 0) == 1

    def test_h0_curve_negative_twist_is_zero(self):
        assert h0_curve(2, 2, -1) == 0
        assert h0_curve(3, 5, -7) == 0

    def test_h0_curve_restriction_identity(self):
        # Sections of degree e on the ambient surface that vanish on the
        # degree-s cut differ from all sections by exactly the curve count.
        for s in range(1, 5):
            for t in range(1, 5):
                for e in range(0, 12):
                    assert h0_surface(t, e) - h0_surface(t, e - s) == h0_curve(s, t, e)

    def test_ci_curve_wraps_h0(self):
        c = CICurve(2, 2)
        assert c.h0(4) == 16
        with pytest.raises(ValueError):
            CICurve(0, 2)

    def test_fat_degree_and_delta_degree(self):
        assert fat_degree(4) == 10
        assert fat_degree(1) == 1
        assert delta_degree(9, 7) == 52
        assert delta_degree(3, 0) == 6
        assert delta_degree(2, 2) == 5

    def test_delta_degree_rejects_bad_tangency(self):
        with pytest.raises(ValueError):
            delta_degree(3, 4)
        with pytest.raises(ValueError):
            delta_degree(3, -1)


class TestSpecsAndDimensions:
    def test_spec_canonicalizes_and_validates(self):
        s = SurfaceSeriesSpec(4, 3, (2, 4, 3))
        assert s.mults == (4, 3, 2)
        assert str(s) == "L^4_3(4,3,2)"
        with pytest.raises(ValueError):
            SurfaceSeriesSpec(0, 3, (2,))
        with pytest.raises(ValueError):
            SurfaceSeriesSpec(4, 3, (0,))

    def test_planar_spec_str(self):
        assert str(PlanarSeriesSpec(8, (4, 4, 4, 4, 4))) == "L_8(4^5)"

    def test_vdim_anchors(self):
        assert vdim(SurfaceSeriesSpec(4, 2, (4,))) == 0
        assert vdim(SurfaceSeriesSpec(4, 3, (4, 4))) == 0
        assert vdim(SurfaceSeriesSpec(4, 5, (10,))) == -3
        assert edim(SurfaceSeriesSpec(4, 5, (10,))) == 0

    def test_degree_property(self):
        assert SurfaceSeriesSpec(4, 5, (4, 3, 2)).degree == 10 + 6 + 3

    def test_v_projective_anchors(self):
        assert v_projective(5, RDivisorClass(1, (2,))) == 0
        assert v_projective(5, RDivisorClass(1, (1.0, 1.0, 1.0))) == 0
        assert v_projective(5, RDivisorClass(2, ())) == 9

    def test_v_projective_exact_for_integers(self):
        val = v_projective(5, RDivisorClass(3, (2, 2, 1)))
        assert isinstance(val, int)

    def test_projective_and_vector_space_conventions_differ_by_one(self):
        for d, e, mults in [(4, 5, (10,)), (5, 2, (2, 2)), (2, 6, (4, 4, 2)), (7, 3, (3,))]:
            spec = SurfaceSeriesSpec(d, e, mults)
            assert vdim(spec) == v_projective(d, RDivisorClass(e, mults)) + 1

    def test_rdivisor_validation(self):
        with pytest.raises(ValueError):
            RDivisorClass(0, (1,))
        with pytest.raises(ValueError):
            RDivisorClass(2, (-1.0,))


class TestGrowthFunction:
    def test_g_zero(self):
        assert g_value(5, 0) == 0.0

    def test_g_defining_identity(self):
        for d in (4, 5, 8):
            for a in range(0, 20):
                g = g_value(d, a)
                f = h0_surface(d, a) - 1
                assert abs(g * (g + 1) / 2 - f) < 1e-9

    def test_successive_differences_degree_five(self):
        g = [g_value(5, a) for a in range(5)]
        assert abs((g[2] - g[1]) - 1.77) < 0.01
        assert abs((g[3] - g[2]) - 1.91) < 0.01
        assert abs((g[4] - g[3]) - 2.08) < 0.01


class TestInequalityScans:
    def test_superadditivity_failures_degree_five(self):
        assert scan_superadditivity(5, 60) == [(1, 1), (2, 1)]

    def test_pair_two_two_holds(self):
        assert (2, 2) not in scan_superadditivity(5, 60)

    def test_superadditivity_high_degree(self):
        assert set(scan_superadditivity(20, 40)) <= {(1, 1), (2, 1)}

    def test_superadditivity_validation(self):
        with pytest.raises(ValueError):
            scan_superadditivity(1, 10)
        with pytest.raises(ValueError):
            scan_superadditivity(5, 1)

    def test_convexity_no_failures(self):
        assert scan_discrete_convexity(5, 50) == []
        assert scan_discrete_convexity(8, 30) == []

    def test_convexity_at_two_spot_check(self):
        assert 2 * g_value(5, 2) < g_value(5, 3) + g_value(5, 1)


class TestSmallPairs:
    def test_degree_five_full_sweep_passes(self):
        report = check_small_pairs(5, r=12)
        assert report.ok
        assert not report.violations
        # 6 x 2 mixed-degree rows plus 2 x 2 equal-degree pairs, which each
        # contribute a distinct-placement row and (on the diagonal) an
        # identical-placement row.
        assert len(report.rows) == 6 * 2 + 4 + 2

    def test_degree_six_full_sweep_passes(self):
        assert check_small_pairs(6, r=9).ok

    def test_mixed_row_bound_is_tight_somewhere(self):
        report = check_small_pairs(5, r=12)
        mixed = [r for r in report.rows if (r.a, r.a_prime) == (2, 1)]
        assert all(r.min_v >= 1 for r in mixed)
        assert any(r.min_v == 1 for r in mixed)

    def test_identical_placement_rows_are_nonpositive(self):
        report = check_small_pairs(5, r=12)
        equal_rows = [r for r in report.rows if r.required.startswith("<= 0")]
        assert len(equal_rows) == 2
        assert all(r.min_v <= 0 for r in equal_rows)

    def test_validation(self):
        with pytest.raises(ValueError):
            check_small_pairs(4)
        with pytest.raises(ValueError):
            check_small_pairs(5, r=8)


class TestRandomizedMinConfig:
    def test_mixed_degrees_minimum_respects_boundary_value(self):
        report = randomized_min_config(5, 2, 1, 5, samples=10_000, seed=0)
        assert report.ok
        assert report.min_value >= report.single_point_value - 1e-6

    def test_equal_degrees(self):
        assert randomized_min_config(5, 3, 3, 3, samples=10_000, seed=1).ok

    def test_single_point_is_exact_for_one_point(self):
        report = randomized_min_config(5, 2, 1, 1, samples=2_000, seed=2)
        assert abs(report.min_value - report.single_point_value) < 1e-6

    def test_reproducible(self):
        a = randomized_min_config(5, 2, 1, 4, samples=500, seed=7)
        b = randomized_min_config(5, 2, 1, 4, samples=500, seed=7)
        assert a.min_value == b.min_value and a.argmin_b == b.argmin_b

    def test_validation(self):
        with pytest.raises(ValueError):
            randomized_min_config(5, 2, 1, 0)
        with pytest.raises(ValueError):
            randomized_min_config(5, 2, 1, 3, samples=0)


class TestMultiplicityFormat:
    def test_parse_examples(self):
        assert parse_mults("4^2,3,2^3") == (4, 4, 3, 2, 2, 2)
        assert parse_mults("") == ()
        assert parse_mults("2,4,3") == (4, 3, 2)

    def test_format_examples(self):
        assert format_mults((4, 4, 3)) == "4^2,3"
        assert format_mults(()) == ""
        assert format_mults((2, 2, 2)) == "2^3"

    @given(st.lists(st.integers(min_value=1, max_value=15), max_size=12))
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, mults):
        canonical = tuple(sorted(mults, reverse=True))
        assert parse_mults(format_mults(canonical)) == canonical
