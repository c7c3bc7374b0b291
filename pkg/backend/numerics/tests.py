import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from core.exceptions import GammaRatioInfinite, NoSignChange, PoleArgument
from numerics.roots import bracketed_root, scan_for_bracket
from numerics.special import (
    gamma_ratio,
    log_gamma_signed,
    reciprocal_gamma_pair,
)


def _off_integers(x, gap=1e-2):
    return abs(x - round(x)) > gap


@pytest.mark.unit
class TestLogGammaSigned:

    def test_gamma_one(self):
        lg = log_gamma_signed(1.0)
        assert lg.sign == 1
        assert abs(lg.log_abs) < 1e-15

    def test_half(self):
        lg = log_gamma_signed(0.5)
        assert lg.sign == 1
        np.testing.assert_allclose(lg.log_abs, float(mpmath.log(mpmath.sqrt(mpmath.pi))), rtol=1e-13)

    def test_negative_half(self):
        lg = log_gamma_signed(-0.5)
        assert lg.sign == -1
        np.testing.assert_allclose(lg.log_abs, float(mpmath.log(2 * mpmath.sqrt(mpmath.pi))), rtol=1e-13)

    @pytest.mark.parametrize('x', [0.0, -1.0, -7.0, -1e-15])
    def test_poles_rejected(self, x):
        with pytest.raises(PoleArgument):
            log_gamma_signed(x)

    @pytest.mark.parametrize('x', [-3.7, -0.2, 2.5, 17.3, 120.9])
    def test_matches_mpmath(self, x):
        lg = log_gamma_signed(x)
        expected = mpmath.gamma(x)
        assert lg.sign == (1 if expected > 0 else -1)
        np.testing.assert_allclose(lg.log_abs, float(mpmath.log(abs(expected))), rtol=1e-13, atol=1e-14)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(x=st.floats(min_value=-50.0, max_value=49.0, allow_nan=False))
    def test_recurrence(self, x):
        assume(_off_integers(x))
        a, b = log_gamma_signed(x + 1), log_gamma_signed(x)
        np.testing.assert_allclose(a.sign * b.sign * math.exp(a.log_abs - b.log_abs), x, rtol=1e-12)

    @pytest.mark.property
    @settings(max_examples=200, deadline=None)
    @given(z=st.floats(min_value=-25.0, max_value=25.0, allow_nan=False))
    def test_duplication(self, z):
        assume(_off_integers(2 * z, gap=2e-2))
        lhs_a, lhs_b = log_gamma_signed(z), log_gamma_signed(z + 0.5)
        rhs = log_gamma_signed(2 * z)
        log_lhs = lhs_a.log_abs + lhs_b.log_abs
        log_rhs = 0.5 * math.log(math.pi) + (1 - 2 * z) * math.log(2) + rhs.log_abs
        assert lhs_a.sign * lhs_b.sign == rhs.sign
        np.testing.assert_allclose(math.exp(log_lhs - log_rhs), 1.0, rtol=1e-12)


@pytest.mark.unit
class TestGammaRatio:

    def test_origin_against_oracle(self):
        mpmath.mp.dps = 30
        expected = float(mpmath.gamma(mpmath.mpf(3) / 4) / mpmath.gamma(mpmath.mpf(1) / 4))
        np.testing.assert_allclose(gamma_ratio(0.0), expected, rtol=1e-13)
        np.testing.assert_allclose(expected, 0.33798912, rtol=1e-7)

    @pytest.mark.parametrize('x', [0.25, 1.25, 5.25])
    def test_zero_at_denominator_poles(self, x):
        assert gamma_ratio(x) == 0.0

    @pytest.mark.parametrize('x', [0.75, 1.75, 10.75])
    def test_infinite_at_numerator_poles(self, x):
        with pytest.raises(GammaRatioInfinite):
            gamma_ratio(x)

    def test_large_energy_does_not_overflow(self):
        # Gamma(3/4 - x)/Gamma(1/4 - x) ~ (-x)^(1/2) in magnitude
        value = gamma_ratio(400.1)
        assert math.isfinite(value)
        assert 1 < abs(value) < 100


@pytest.mark.unit
class TestReciprocalGammaPair:

    def test_ratio_matches_gamma_ratio(self):
        for x in (-3.3, -0.4, 0.0, 0.6, 2.1, 7.9):
            p, q = reciprocal_gamma_pair(x)
            np.testing.assert_allclose(p / q, gamma_ratio(x), rtol=1e-12)

    def test_exact_zeros(self):
        p, q = reciprocal_gamma_pair(0.25)
        assert p == 0.0 and q != 0.0
        p, q = reciprocal_gamma_pair(2.75)
        assert q == 0.0 and p != 0.0

    def test_normalized(self):
        for x in (-40.0, 0.1, 300.3):
            p, q = reciprocal_gamma_pair(x)
            np.testing.assert_allclose(max(abs(p), abs(q)), 1.0)


@pytest.mark.unit
class TestBracketedRoot:

    def test_sqrt_two(self):
        root = bracketed_root(lambda x: x * x - 2, 1.0, 2.0, tol=1e-12)
        np.testing.assert_allclose(root, math.sqrt(2), atol=1e-12)

    def test_linear(self):
        assert abs(bracketed_root(lambda x: x, -1.0, 1.0)) < 1e-12

    def test_no_sign_change(self):
        with pytest.raises(NoSignChange):
            bracketed_root(lambda x: x * x + 1, 0.0, 1.0)

    def test_endpoint_root_returned(self):
        assert bracketed_root(lambda x: x - 1.0, 1.0, 3.0) == 1.0

    def test_never_leaves_bracket(self):
        seen = []

        def f(x):
            seen.append(x)
            return math.tan(x) - 1.0

        bracketed_root(f, 0.1, 1.2)
        assert min(seen) >= 0.1 and max(seen) <= 1.2

    def test_scan_finds_inner_bracket(self):
        # sign at both ends is the same, two roots inside
        lo, hi = scan_for_bracket(lambda x: (x - 0.3) * (x - 0.7), 0.0, 1.0)
        assert lo <= 0.3 <= hi

    def test_scan_without_sign_change(self):
        assert scan_for_bracket(lambda x: 1.0 + x * x, -1.0, 1.0) is None
