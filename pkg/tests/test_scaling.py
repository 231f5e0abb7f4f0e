"""Scaled density profiles and their Mittag-Leffler limits."""

import math
from fractions import Fraction

import numpy as np
import pytest

from bergkernel.models import SpindleParams
from bergkernel.scaling import (
    ScaledProfile,
    limit_profile,
    pole_limit_profile,
    scaled_gap,
    scaled_profile,
    theta_sequence,
)

FROZEN_FLUX_LIMIT = {(0.5, 0.2, 2.5): 0.9975169539792360444004}
FROZEN_POLE_LIMIT = {(0.5, 0.5, 0.25, 1.0): 0.5167199149103534467888}


class TestScaledProfile:
    def test_smooth_case_is_constant(self):
        prof = scaled_profile(SpindleParams(1.0, 0.0), 25, np.linspace(0.0, 5.0, 11))
        for v in prof.values:
            assert v == pytest.approx(26.0 / 25.0, rel=1e-13)

    def test_cone_peak_at_zero(self):
        prof = scaled_profile(SpindleParams(0.5, 0.0), 100, [0.0, 1.0])
        assert prof.values[0] == pytest.approx(2.01, rel=1e-13)

    def test_large_power_near_limit(self):
        params = SpindleParams(0.5, 0.0)
        prof = scaled_profile(params, 400, [3.0])
        assert prof.values[0] == pytest.approx(limit_profile(params, 3.0), abs=5e-3)

    def test_divergent_sample_is_flagged(self):
        # a = 1, nu = 1/2, odd p: the pole variant diverges at y = 0
        prof = scaled_profile(SpindleParams(1.0, 0.5), 3, [0.0, 1.0, 2.0], variant="pole")
        assert prof.values[0] == math.inf
        assert prof.diverged == (0,)
        assert math.isfinite(prof.values[1])

    def test_variant_validation(self):
        with pytest.raises(ValueError):
            scaled_profile(SpindleParams(0.5, 0.0), 10, [1.0], variant="other")
        with pytest.raises(ValueError):
            scaled_profile(SpindleParams(0.5, 0.0), 10, [-1.0])

    def test_grid_invariants(self):
        with pytest.raises(ValueError):
            ScaledProfile(p=4, y=(1.0, 0.5), values=(1.0, 1.0))


class TestLimitProfile:
    def test_smooth_case_is_one(self):
        params = SpindleParams(1.0, 0.0)
        for y in np.geomspace(0.1, 10.0, 20):
            assert limit_profile(params, float(y)) == pytest.approx(1.0, rel=1e-13)

    def test_half_order_closed_form(self):
        # a = 1/2 collapses to 2 e^{-y} cosh(sqrt(y^2)) = 1 + e^{-2y}
        params = SpindleParams(0.5, 0.0)
        assert limit_profile(params, 1.0) == pytest.approx(1.0 + math.exp(-2.0), rel=1e-13)

    def test_frozen_value(self):
        for (a, nu, y), expected in FROZEN_FLUX_LIMIT.items():
            assert limit_profile(SpindleParams(a, nu), y) == pytest.approx(expected, rel=1e-12)

    def test_value_at_zero(self):
        assert limit_profile(SpindleParams(0.5, 0.0), 0.0) == 2.0  # 1/a
        assert limit_profile(SpindleParams(0.5, 0.7), 0.0) == 0.0  # positive exponent
        with pytest.raises(ValueError):
            limit_profile(SpindleParams(0.5, 0.2), 0.0)  # negative exponent


class TestPoleLimitProfile:
    def test_degenerate_fluxless_case(self):
        params = SpindleParams(1.0, 0.0)
        for y in (0.3, 1.0, 7.0):
            assert pole_limit_profile(params, 0.0, y) == pytest.approx(1.0, rel=1e-13)

    def test_frozen_value(self):
        for (a, nu, th, y), expected in FROZEN_POLE_LIMIT.items():
            assert pole_limit_profile(SpindleParams(a, nu), th, y) == pytest.approx(
                expected, rel=1e-12
            )

    def test_theta_domain(self):
        params = SpindleParams(0.5, 0.5)
        pole_limit_profile(params, -0.5, 1.0)  # theta = -a is the closed endpoint
        pole_limit_profile(params, 0.5, 1.0)
        with pytest.raises(ValueError):
            pole_limit_profile(params, 0.51, 1.0)
        with pytest.raises(ValueError):
            pole_limit_profile(params, -0.51, 1.0)

    def test_y_domain(self):
        with pytest.raises(ValueError):
            pole_limit_profile(SpindleParams(0.5, 0.5), 0.0, 0.0)


class TestThetaSequence:
    def test_smooth_order_fractional_part(self):
        # at a = 1 the sequence is minus the fractional part of p*nu
        assert theta_sequence(SpindleParams(1.0, 0.5), 4) == 0.0
        assert theta_sequence(SpindleParams(1.0, 0.5), 3) == pytest.approx(-0.5)

    def test_endpoint_attained(self):
        assert theta_sequence(SpindleParams(0.5, 0.5), 3) == pytest.approx(0.5)

    def test_interval_confinement_exact_rational(self):
        # floor arithmetic done in exact rationals: theta in (-a, 1-a]
        a, nu = Fraction(1, 2), Fraction(1, 4)
        for p in range(1, 201):
            jp = math.floor(p * nu - a) + 1
            theta = jp - p * nu
            assert -a < theta <= 1 - a
            got = theta_sequence(SpindleParams(float(a), float(nu)), p)
            assert got == pytest.approx(float(theta), abs=1e-12)

    def test_irrational_flux_fills_the_interval(self):
        params = SpindleParams(0.5, 1.0 / math.sqrt(2.0))
        thetas = np.array([theta_sequence(params, p) for p in range(1, 10001)])
        assert np.all(thetas > -0.5) and np.all(thetas <= 0.5)
        assert thetas.min() <= -0.49 and thetas.max() >= 0.49


class TestConvergence:
    def test_gap_halves_with_power(self):
        y = np.geomspace(0.1, 10.0, 40)
        params = SpindleParams(0.5, 0.25)
        assert scaled_gap(params, 100, y) < scaled_gap(params, 50, y)

    def test_smooth_case_gap_is_reciprocal_power(self):
        y = np.geomspace(0.1, 10.0, 25)
        for p in (50, 200):
            gap = scaled_gap(SpindleParams(1.0, 0.0), p, y)
            assert gap * p == pytest.approx(1.0, rel=1e-9)

    def test_pole_variant_residue_class_converges(self):
        # rational flux 1/2: along even p the pole offset is the constant 0,
        # and the profiles approach the theta = 0 subsequential limit
        params = SpindleParams(0.5, 0.5)
        y = np.geomspace(0.1, 10.0, 30)
        assert theta_sequence(params, 40) == theta_sequence(params, 160) == 0.0
        gaps = [
            scaled_gap(params, p, y, variant="pole", theta=0.0) for p in (40, 80, 160)
        ]
        assert gaps[2] < gaps[1] < gaps[0]

    def test_pole_gap_requires_theta(self):
        with pytest.raises(ValueError):
            scaled_gap(SpindleParams(0.5, 0.5), 10, [1.0], variant="pole")
