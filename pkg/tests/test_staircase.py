"""Staircase ideal arithmetic for on-curve punctual schemes."""

import pytest

from fatpoints.staircase import (
    DeltaAligned,
    FatPoint,
    StaircaseIdeal,
    colon_rule,
    delta_ideal,
    fat_ideal,
    recognize_scheme,
    restrict_rule,
    scheme_degree,
    scheme_ideal,
    staircase_colon,
    staircase_restrict,
)


def all_schemes(max_m):
    for m in range(1, max_m + 1):
        yield FatPoint(m)
        for n in range(1, m + 1):
            yield DeltaAligned(m, n)


def brute_colength(ideal, box=40):
    return sum(
        1 for a in range(box) for b in range(box) if not ideal.contains(a, b)
    )


def brute_quotient_heights(ideal, box=40):
    heights = []
    for b in range(box):
        h = next(a for a in range(box + 1) if ideal.contains(a, b + 1))
        if h == 0:
            break
        heights.append(h)
    return tuple(heights)


class TestIdealConstruction:
    def test_fat_ideal_generators(self):
        assert fat_ideal(3).gens == ((3, 0), (2, 1), (1, 2), (0, 3))
        assert fat_ideal(1).gens == ((1, 0), (0, 1))

    def test_tangency_ideal_generators(self):
        assert delta_ideal(3, 1).gens == ((4, 0), (2, 1), (1, 2), (0, 3))
        assert delta_ideal(3, 3).gens == ((4, 0), (3, 1), (2, 2), (0, 3))
        assert delta_ideal(1, 1).gens == ((2, 0), (0, 1))

    def test_heights_round_trip(self):
        for scheme in all_schemes(8):
            ideal = scheme_ideal(scheme)
            assert StaircaseIdeal.from_heights(ideal.heights) == ideal

    def test_generator_validation(self):
        with pytest.raises(ValueError, match="y-exponents"):
            StaircaseIdeal(gens=((2, 1), (1, 1)))
        with pytest.raises(ValueError, match="x-exponents"):
            StaircaseIdeal(gens=((1, 0), (2, 1), (0, 2)))
        with pytest.raises(ValueError, match="pure power"):
            StaircaseIdeal(gens=((2, 0), (1, 1)))
        with pytest.raises(ValueError, match="generator"):
            StaircaseIdeal(gens=())

    def test_heights_validation(self):
        with pytest.raises(ValueError, match="decreasing"):
            StaircaseIdeal.from_heights((1, 2))
        with pytest.raises(ValueError, match="positive"):
            StaircaseIdeal.from_heights((2, 0))

    def test_scheme_parameter_validation(self):
        with pytest.raises(ValueError):
            FatPoint(0)
        with pytest.raises(ValueError):
            DeltaAligned(2, 3)
        with pytest.raises(ValueError):
            fat_ideal(0)
        with pytest.raises(ValueError):
            delta_ideal(2, 0)


class TestColength:
    def test_colength_equals_scheme_degree(self):
        for scheme in all_schemes(12):
            assert scheme_ideal(scheme).colength() == scheme_degree(scheme)

    def test_colength_matches_membership_count(self):
        for scheme in all_schemes(6):
            ideal = scheme_ideal(scheme)
            assert ideal.colength() == brute_colength(ideal)

    def test_unit_ideal(self):
        unit = StaircaseIdeal(gens=((0, 0),))
        assert unit.is_unit
        assert unit.colength() == 0
        assert recognize_scheme(unit) is None


class TestRecognition:
    def test_round_trip_over_all_ledger_schemes(self):
        for scheme in all_schemes(12):
            assert recognize_scheme(scheme_ideal(scheme)) == scheme

    def test_non_ledger_staircase_rejected(self):
        with pytest.raises(ValueError, match="not a ledger scheme"):
            recognize_scheme(StaircaseIdeal.from_heights((5, 1)))
        with pytest.raises(ValueError, match="not a ledger scheme"):
            recognize_scheme(StaircaseIdeal.from_heights((2, 2)))


class TestRestriction:
    def test_ideal_route_matches_rule_up_to_twelve(self):
        for scheme in all_schemes(12):
            assert staircase_restrict(scheme) == restrict_rule(scheme)

    def test_anchors(self):
        assert staircase_restrict(FatPoint(4)) == 4
        assert staircase_restrict(DeltaAligned(3, 3)) == 4
        assert staircase_restrict(DeltaAligned(1, 1)) == 2

    def test_restriction_ideal_is_principal_plus_axis(self):
        ideal = delta_ideal(3, 2).plus_y_axis()
        assert ideal.gens == ((4, 0), (0, 1))


class TestResidual:
    def test_ideal_route_matches_rule_up_to_twelve(self):
        for scheme in all_schemes(12):
            assert staircase_colon(scheme) == colon_rule(scheme)

    def test_quotient_matches_membership_brute_force(self):
        for scheme in all_schemes(6):
            ideal = scheme_ideal(scheme)
            assert ideal.quotient_y().heights == brute_quotient_heights(ideal)

    def test_anchors(self):
        assert staircase_colon(FatPoint(4)) == FatPoint(3)
        assert staircase_colon(FatPoint(1)) is None
        assert staircase_colon(DeltaAligned(3, 3)) == DeltaAligned(2, 2)
        assert staircase_colon(DeltaAligned(3, 1)) == FatPoint(2)
        assert staircase_colon(DeltaAligned(1, 1)) is None

    def test_explicit_quotient_generators(self):
        assert delta_ideal(3, 1).quotient_y() == fat_ideal(2)

    def test_degree_conservation(self):
        # Removing the curve once costs exactly the restriction degree.
        for scheme in all_schemes(12):
            residual = staircase_colon(scheme)
            residual_degree = scheme_degree(residual) if residual else 0
            assert scheme_degree(scheme) == residual_degree + staircase_restrict(scheme)
