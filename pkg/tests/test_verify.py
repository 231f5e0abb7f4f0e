"""Verification harness: deviations, bound shapes, reports."""

import math

import numpy as np
import pytest

from bergkernel.models import (
    fubini_study_model,
    log_singular_demo_model,
    poincare_disc_model,
    spindle_model,
)
from bergkernel.verify import (
    BoundReport,
    ConfigurationError,
    b0_check,
    bound_check,
    corollary_check,
    deviation,
    gamma_lemma_check,
    two_term_suite,
)


class TestDeviation:
    def test_fubini_study(self):
        assert deviation(fubini_study_model(), 10, 0.7) == pytest.approx(0.1, rel=1e-11)

    def test_spindle_at_unit_radius(self):
        assert deviation(spindle_model(0.5, 0.0), 100, 1.0) == pytest.approx(0.005, rel=1e-9)

    def test_disc_curvature_normalised_form(self):
        # the computed kernel is (2p - 1)/pi up to an exponentially small
        # remainder, so the curvature-normalised deviation is 1/(2p)
        assert deviation(poincare_disc_model(), 60, 0.3) == pytest.approx(1.0 / 120.0, rel=1e-9)

    def test_puncture_guard(self):
        with pytest.raises(ValueError):
            deviation(spindle_model(0.5, 0.0), 10, 0.0)

    def test_eventually_decreasing_in_power(self):
        for model, r in (
            (spindle_model(0.5, 0.0), 0.8),
            (log_singular_demo_model(), 0.8),
            (poincare_disc_model(), 0.4),
        ):
            gaps = [deviation(model, p, r) for p in (64, 128, 256, 512)]
            assert all(b < a for a, b in zip(gaps, gaps[1:]))


class TestBoundCheck:
    def test_spindle_passes(self):
        report = bound_check(spindle_model(0.5, 0.0))
        assert report.passed
        assert math.isfinite(report.fitted_constant)
        assert 0.5 <= report.stability_ratio <= 2.0
        assert (report.alpha, report.beta, report.delta) == (2.0, 2.0, 16.0)

    def test_log_singular_demo_passes(self):
        report = bound_check(log_singular_demo_model())
        assert report.passed
        assert (report.alpha, report.beta, report.delta) == (0.0, 0.0, 8.0 / 3.0)

    def test_disc_passes(self):
        report = bound_check(poincare_disc_model(), r_set=np.linspace(0.1, 0.95, 24))
        assert report.passed
        assert (report.alpha, report.beta, report.delta) == (3.0, 3.0, 24.0)

    def test_fubini_study_constant_attained_at_smallest_power(self):
        # deviation is exactly 1/p, so dev/shape = p^{-7/8}/(1 + p^{-1/4})
        # decreases in p and the sup sits at the smallest power
        p_set = (64, 128, 256)
        report = bound_check(fubini_study_model(), p_set=p_set)
        p0 = p_set[0]
        expected = (1.0 / p0) / (p0 ** -0.125 + p0 ** -0.375)
        assert report.fitted_constant == pytest.approx(expected, rel=1e-9)

    def test_spans_compact_with_both_punctures_via_chart_swap(self):
        # the fluxless kernel is r -> 1/r symmetric, so the admissible sweep
        # on (0, 1] also certifies the bound near the second puncture
        model = spindle_model(0.5, 0.0)
        report = bound_check(model, r_set=np.linspace(0.3, 1.0, 16))
        assert report.passed
        from bergkernel.kernel import spindle_kernel

        for r in (0.4, 0.8):
            assert spindle_kernel(model.params, 128, r) == pytest.approx(
                spindle_kernel(model.params, 128, 1.0 / r), rel=1e-11
            )

    def test_empty_admissible_set_raises(self):
        with pytest.raises(ConfigurationError):
            bound_check(spindle_model(0.5, 0.0), p_set=(64,), r_set=[0.1], trial_constant=1e9)


class TestCorollaryCheck:
    def test_eta_zero_fixed_compact(self):
        for model in (spindle_model(0.5, 0.0), log_singular_demo_model()):
            report = corollary_check(model, 0.0)
            assert report.passed

    def test_eta_half(self):
        for model in (
            spindle_model(0.5, 0.0),
            log_singular_demo_model(),
            poincare_disc_model(),
        ):
            report = corollary_check(model, 0.5)
            assert report.passed

    def test_eta_one_trivially_bounded(self):
        report = corollary_check(spindle_model(0.5, 0.0), 1.0)
        assert math.isfinite(report.fitted_constant)

    def test_eta_zero_empty_on_bounded_domain(self):
        # r > 1 never intersects the unit disc
        with pytest.raises(ConfigurationError):
            corollary_check(poincare_disc_model(), 0.0)

    def test_eta_validation(self):
        with pytest.raises(ValueError):
            corollary_check(spindle_model(0.5), 1.5)


class TestGammaLemma:
    def test_default_grid_has_no_violations(self):
        report = gamma_lemma_check(
            r_grid=np.linspace(0.0, 10.0, 60), s_grid=np.linspace(1.0, 100.0, 60)
        )
        assert report.passed
        assert report.violations == 0
        assert report.max_limit_gap <= 1e-3

    def test_spot_values(self):
        # r = 0: the bound is 1 <= e^{1/12}; r = 1, s = 1: 1 <= 2 e^{1/12}
        from bergkernel.specfn import log_gamma

        assert 0.0 <= 1.0 / 12.0
        assert log_gamma(2.0) - log_gamma(1.0) <= 1.0 / 12.0 + math.log(2.0)
        r, s = 7.3, 2.5
        assert log_gamma(r + s) - log_gamma(s) <= 1.0 / 12.0 + r * math.log(r + s) + 1e-12


class TestLeadingCoefficient:
    def test_fubini_study_gap_is_exactly_reciprocal(self):
        report = b0_check(fubini_study_model(), 0.9, p_set=(64, 128, 256, 512))
        assert report.passed
        for p, gap in zip(report.p_set, report.gaps):
            assert gap == pytest.approx(1.0 / p, rel=1e-10)

    def test_third_order_cone_gap(self):
        # at a = 1/3 the kernel is p + 1/3 + (exp small) away from the cone
        report = b0_check(spindle_model(1.0 / 3.0, 0.0), 1.5, p_set=(64, 128, 256, 512))
        assert report.passed
        for p, gap in zip(report.p_set, report.gaps):
            assert gap * 3 * p == pytest.approx(1.0, rel=1e-6)

    def test_disc_normalised_kernel_converges(self):
        report = b0_check(poincare_disc_model(), 0.3, p_set=(64, 128, 256, 512))
        assert report.passed


class TestTwoTermSuite:
    def test_disc_two_term_fit(self):
        report = two_term_suite(poincare_disc_model())
        assert report.passed
        # the measured constant term of the two-term expansion is -1/pi
        assert report.fitted_constant == pytest.approx(-1.0 / math.pi, abs=1e-9)
        assert report.stability_ratio == pytest.approx(1.0, abs=1e-6)


class TestReportSerialisation:
    def test_round_trip_exact(self):
        report = bound_check(spindle_model(0.5, 0.0), p_set=(64, 128))
        again = BoundReport.from_json(report.to_json())
        assert again == report

    def test_json_keys(self):
        report = bound_check(spindle_model(0.5, 0.0), p_set=(64, 128))
        d = report.to_json_dict()
        assert set(d) == {"model", "exponents", "grid", "fitted_constant",
                          "stability_ratio", "pass"}
        assert set(d["exponents"]) == {"alpha", "beta", "delta"}
