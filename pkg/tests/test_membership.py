import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzynet import (
    DEFAULT_LEVEL_FUNCTIONS,
    DegenerateInputError,
    InterpretationLevel,
    InvalidMembershipError,
    LevelProfile,
    TrapezoidMF,
    UnknownLevelError,
    default_levels,
    defuzzify_profile,
    quantize_down,
    round_nearest,
)
from helpers import numeric_centroid, random_mf

# dyadic grid values are exactly representable, so arithmetic identities
# tested below hold bit-for-bit
dyadic = st.integers(0, 64).map(lambda k: k / 64.0)


def sorted_corners(values):
    return tuple(sorted(values))


corner_sets = st.tuples(dyadic, dyadic, dyadic, dyadic).map(sorted_corners)


class TestEvaluate:
    def test_piecewise_branches(self):
        mf = TrapezoidMF(0.2, 0.4, 0.4, 0.6)
        assert mf.evaluate(0.1) == 0.0
        assert mf.evaluate(0.2) == 0.0
        assert mf.evaluate(0.3) == pytest.approx(0.5)
        assert mf.evaluate(0.4) == 1.0
        assert mf.evaluate(0.5) == pytest.approx(0.5)
        assert mf.evaluate(0.6) == 0.0
        assert mf.evaluate(0.7) == 0.0

    def test_degenerate_edges_are_inclusive_steps(self):
        assert TrapezoidMF(0.4, 0.4, 0.6, 0.8).evaluate(0.4) == 1.0
        assert TrapezoidMF(0.2, 0.4, 0.6, 0.6).evaluate(0.6) == 1.0
        point = TrapezoidMF(0.5, 0.5, 0.5, 0.5)
        assert point.evaluate(0.5) == 1.0
        assert point.evaluate(0.499) == 0.0

    def test_callable_alias(self):
        mf = TrapezoidMF(0.0, 0.5, 0.5, 1.0)
        assert mf(0.25) == mf.evaluate(0.25)

    @given(corner_sets, st.floats(0.0, 1.0, allow_nan=False))
    def test_result_in_unit_interval(self, corners, x):
        degree = TrapezoidMF(*corners).evaluate(x)
        assert 0.0 <= degree <= 1.0


class TestCentroid:
    def test_golden_values(self):
        goldens = [
            ((0.0, 0.0, 0.1, 0.4), 0.14),
            ((0.2, 0.3, 0.4, 0.6), 0.38),
            ((0.7, 0.9, 0.9, 1.0), 13.0 / 15.0),
            ((0.0, 0.1, 0.1, 0.4), 1.0 / 6.0),
            ((0.7, 0.8, 0.9, 1.0), 0.85),
            ((0.0, 0.2, 0.3, 0.4), 0.22),
            ((0.2, 0.3, 0.5, 0.6), 0.4),
            ((0.6, 0.7, 0.9, 1.0), 0.8),
            ((0.2, 0.4, 0.4, 0.6), 0.4),
        ]
        for corners, expected in goldens:
            assert TrapezoidMF(*corners).centroid() == pytest.approx(expected, abs=1e-12)

    def test_default_level_centroids(self):
        expected = {
            InterpretationLevel.NOT_TRUE: 7.0 / 45.0,
            InterpretationLevel.LITTLE_TRUE: 0.4,
            InterpretationLevel.HALF_TRUE: 0.6,
            InterpretationLevel.RATHER_TRUE: 0.8,
            InterpretationLevel.QUITE_TRUE: 14.0 / 15.0,
        }
        for level, value in expected.items():
            assert DEFAULT_LEVEL_FUNCTIONS[level].centroid() == pytest.approx(value, abs=1e-12)

    def test_point_mass_collapses_to_location(self):
        assert TrapezoidMF(0.3, 0.3, 0.3, 0.3).centroid() == 0.3

    @given(corner_sets)
    def test_centroid_within_support(self, corners):
        mf = TrapezoidMF(*corners)
        assert mf.a <= mf.centroid() <= mf.d

    @given(dyadic, dyadic, dyadic)
    def test_symmetric_trapezoid_centroid_is_midpoint(self, start, rise, plateau):
        a = start / 2.0
        b = a + rise / 4.0
        c = b + plateau / 4.0
        d = c + rise / 4.0
        if d > 1.0 or (c + d) - (a + b) <= 0.0:
            return
        mf = TrapezoidMF(a, b, c, d)
        assert mf.centroid() == pytest.approx((a + d) / 2.0, abs=1e-12)

    def test_matches_numeric_oracle_spot_check(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            mf = random_mf(rng, min_area2=0.04)
            assert mf.centroid() == pytest.approx(numeric_centroid(mf), abs=1e-4)


class TestValidation:
    def test_order_violation(self):
        with pytest.raises(InvalidMembershipError):
            TrapezoidMF(0.4, 0.2, 0.5, 0.6)

    def test_out_of_unit_range(self):
        with pytest.raises(InvalidMembershipError):
            TrapezoidMF(0.0, 0.2, 0.5, 1.2)
        with pytest.raises(InvalidMembershipError):
            TrapezoidMF(-0.1, 0.2, 0.5, 0.9)

    def test_nan_rejected(self):
        with pytest.raises(InvalidMembershipError):
            TrapezoidMF(0.0, float("nan"), 0.5, 0.9)

    def test_non_number_rejected(self):
        with pytest.raises(InvalidMembershipError):
            TrapezoidMF(0.0, "x", 0.5, 0.9)

    def test_from_corners_wrong_arity(self):
        with pytest.raises(InvalidMembershipError):
            TrapezoidMF.from_corners([0.1, 0.2, 0.3])


class TestBlend:
    def test_blend_golden(self):
        blended = TrapezoidMF(0.2, 0.4, 0.4, 0.6).blend_toward(
            TrapezoidMF(0.8, 1.0, 1.0, 1.0), 0.2
        )
        assert blended.corners == pytest.approx((0.32, 0.52, 0.52, 0.68), abs=1e-12)

    def test_blend_reject_golden(self):
        blended = TrapezoidMF(0.8, 1.0, 1.0, 1.0).blend_toward(
            TrapezoidMF(0.0, 0.0, 0.2, 0.4), 0.2
        )
        assert blended.corners == pytest.approx((0.64, 0.8, 0.84, 0.88), abs=1e-12)

    def test_full_rate_snaps_to_anchor(self):
        anchor = TrapezoidMF(0.8, 1.0, 1.0, 1.0)
        assert TrapezoidMF(0.1, 0.2, 0.3, 0.4).blend_toward(anchor, 1.0) == anchor

    def test_rate_validation(self):
        mf = TrapezoidMF(0.1, 0.2, 0.3, 0.4)
        for rate in (0.0, -0.2, 1.5):
            with pytest.raises(DegenerateInputError):
                mf.blend_toward(mf, rate)

    @given(corner_sets, corner_sets, st.floats(0.01, 1.0, allow_nan=False))
    def test_blend_preserves_corner_order(self, first, second, rate):
        blended = TrapezoidMF(*first).blend_toward(TrapezoidMF(*second), rate)
        a, b, c, d = blended.corners
        assert 0.0 <= a <= b <= c <= d <= 1.0


class TestLevels:
    def test_key_round_trip(self):
        for level in InterpretationLevel:
            assert InterpretationLevel.from_key(level.key) is level

    def test_unknown_key(self):
        with pytest.raises(UnknownLevelError):
            InterpretationLevel.from_key("sort_of_true")

    def test_total_order(self):
        assert (
            InterpretationLevel.NOT_TRUE
            < InterpretationLevel.LITTLE_TRUE
            < InterpretationLevel.HALF_TRUE
            < InterpretationLevel.RATHER_TRUE
            < InterpretationLevel.QUITE_TRUE
        )


class TestLevelProfile:
    def test_entries_sorted_by_level(self):
        profile = LevelProfile(
            (
                (InterpretationLevel.QUITE_TRUE, TrapezoidMF(0.8, 1, 1, 1)),
                (InterpretationLevel.NOT_TRUE, TrapezoidMF(0, 0, 0.2, 0.4)),
            )
        )
        assert profile.levels == (
            InterpretationLevel.NOT_TRUE,
            InterpretationLevel.QUITE_TRUE,
        )

    def test_dominant_level_is_strongest_present(self):
        profile = LevelProfile(
            (
                (InterpretationLevel.NOT_TRUE, TrapezoidMF(0, 0, 0.2, 0.4)),
                (InterpretationLevel.RATHER_TRUE, TrapezoidMF(0.6, 0.8, 0.8, 1)),
            )
        )
        assert profile.dominant_level() is InterpretationLevel.RATHER_TRUE

    def test_duplicate_level_rejected(self):
        mf = TrapezoidMF(0.2, 0.4, 0.4, 0.6)
        with pytest.raises(InvalidMembershipError):
            LevelProfile(
                ((InterpretationLevel.HALF_TRUE, mf), (InterpretationLevel.HALF_TRUE, mf))
            )

    def test_empty_rejected(self):
        with pytest.raises(DegenerateInputError):
            LevelProfile(())

    def test_with_function_replaces_and_inserts(self):
        profile = LevelProfile(((InterpretationLevel.HALF_TRUE, TrapezoidMF(0.4, 0.6, 0.6, 0.8)),))
        replaced = profile.with_function(InterpretationLevel.HALF_TRUE, TrapezoidMF(0, 0, 1, 1))
        assert replaced[InterpretationLevel.HALF_TRUE].corners == (0.0, 0.0, 1.0, 1.0)
        inserted = profile.with_function(InterpretationLevel.NOT_TRUE, TrapezoidMF(0, 0, 0.2, 0.4))
        assert inserted.levels == (
            InterpretationLevel.NOT_TRUE,
            InterpretationLevel.HALF_TRUE,
        )
        # original untouched
        assert profile.levels == (InterpretationLevel.HALF_TRUE,)

    def test_lookup_helpers(self):
        profile = default_levels()
        assert InterpretationLevel.HALF_TRUE in profile
        assert profile.get(InterpretationLevel.HALF_TRUE) is not None
        with pytest.raises(KeyError):
            LevelProfile(((InterpretationLevel.HALF_TRUE, TrapezoidMF(0.4, 0.6, 0.6, 0.8)),))[
                InterpretationLevel.NOT_TRUE
            ]


class TestDefaultsAndHelpers:
    def test_default_levels_covers_all_five(self):
        assert default_levels().levels == tuple(InterpretationLevel)

    def test_quite_true_clamped_to_unit_universe(self):
        assert DEFAULT_LEVEL_FUNCTIONS[InterpretationLevel.QUITE_TRUE].corners == (
            0.8,
            1.0,
            1.0,
            1.0,
        )

    def test_defuzzify_profile_keeps_only_present_levels(self):
        profile = LevelProfile(((InterpretationLevel.HALF_TRUE, TrapezoidMF(0.4, 0.6, 0.6, 0.8)),))
        values = defuzzify_profile(profile)
        assert list(values) == [InterpretationLevel.HALF_TRUE]
        assert values[InterpretationLevel.HALF_TRUE] == pytest.approx(0.6)

    def test_quantize_down_truncates(self):
        assert quantize_down(0.8667) == 0.86
        assert quantize_down(13.0 / 15.0) == 0.86
        assert quantize_down(0.9999) == 0.99
        assert quantize_down(0.1) == 0.1

    def test_quantize_down_ignores_float_noise(self):
        # 0.85 is stored slightly below 85/100; naive floor would give 0.84
        assert quantize_down(0.85) == 0.85
        assert quantize_down(1.02 / 1.2) == 0.85

    def test_round_nearest(self):
        assert round_nearest(0.45666) == 0.46
        assert round_nearest(0.49333) == 0.49
        assert round_nearest(0.944) == 0.94
        assert math.isclose(round_nearest(0.12345, 3), 0.123)
