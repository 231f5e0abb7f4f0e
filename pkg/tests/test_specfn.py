"""Special-function layer: log-Gamma, log-Beta, Mittag-Leffler series."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from bergkernel import specfn
from bergkernel.specfn import (
    ConvergenceError,
    MLParams,
    log_beta,
    log_gamma,
    log_gamma_vec,
    mittag_leffler,
)


class TestLogGamma:
    def test_known_values(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert log_gamma(2.0) == pytest.approx(0.0, abs=1e-15)
        assert log_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)

    def test_accuracy_against_libm(self):
        # platform libm lgamma is an independent implementation, good to ~1e-15
        xs = np.concatenate(
            [np.geomspace(1e-3, 0.5, 150, endpoint=False), np.linspace(0.5, 50, 300),
             np.geomspace(50, 1e6, 200)]
        )
        for x in xs:
            ref = math.lgamma(float(x))
            got = log_gamma(float(x))
            if abs(ref) > 1e-10:
                assert abs(got - ref) <= 1e-13 * abs(ref), f"x={x}"
            else:
                assert abs(got - ref) <= 1e-14, f"x={x}"

    def test_vectorised_matches_scalar(self):
        xs = np.geomspace(1e-3, 1e5, 97)
        vec = log_gamma_vec(xs)
        for x, v in zip(xs, vec):
            assert v == pytest.approx(log_gamma(float(x)), rel=1e-15, abs=1e-15)

    @pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
    def test_domain_error(self, bad):
        with pytest.raises(ValueError):
            log_gamma(bad)


class TestLogBeta:
    def test_known_values(self):
        assert log_beta(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)
        assert log_beta(2.0, 3.0) == pytest.approx(math.log(1.0 / 12.0), rel=1e-14)

    def test_against_quadrature_oracle(self):
        # B(x, y) = int_0^1 t^(x-1) (1-t)^(y-1) dt, here at x = 1+2j, y = 1+2(p-j)
        j, p = 3, 7
        x, y = 1.0 + 2 * j, 1.0 + 2 * (p - j)
        oracle, err = quad(lambda t: t ** (x - 1) * (1 - t) ** (y - 1), 0.0, 1.0,
                           epsabs=0.0, epsrel=1e-12)
        assert err < 1e-12 * oracle
        assert log_beta(x, y) == pytest.approx(math.log(oracle), rel=1e-11)

    @given(
        st.floats(min_value=1e-3, max_value=1e3),
        st.floats(min_value=1e-3, max_value=1e3),
    )
    @settings(max_examples=200)
    def test_symmetry_exact(self, x, y):
        assert log_beta(x, y) == log_beta(y, x)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            log_beta(0.0, 1.0)
        with pytest.raises(ValueError):
            log_beta(1.0, -2.0)


class TestMittagLeffler:
    def test_params_validation(self):
        with pytest.raises(ValueError):
            MLParams(0.0, 1.0)
        with pytest.raises(ValueError):
            MLParams(1.0, -0.1)
        MLParams(1.0, 0.0)  # s = 0 is allowed

    def test_exponential_case(self):
        assert mittag_leffler(MLParams(1.0, 1.0), 2.0) == pytest.approx(math.e**2, rel=1e-13)
        for z in np.linspace(0.0, 30.0, 31):
            got = mittag_leffler(MLParams(1.0, 1.0), float(z))
            assert got == pytest.approx(math.exp(z), rel=1e-12)

    def test_cosh_case(self):
        assert mittag_leffler(MLParams(2.0, 1.0), 1.0) == pytest.approx(math.cosh(1.0), rel=1e-13)
        assert mittag_leffler(MLParams(2.0, 1.0), 4.0) == pytest.approx(math.cosh(2.0), rel=1e-13)

    def test_frozen_high_precision_values(self):
        # 50-digit direct summation oracle (500+ terms, extended precision)
        assert mittag_leffler(MLParams(2.0, 0.75), 3.5) == pytest.approx(
            3.831988878427537587463, rel=1e-13
        )
        assert mittag_leffler(MLParams(3.0, 1.2), 1000.0) == pytest.approx(
            4632.585417367810821791, rel=1e-12
        )

    def test_value_at_zero_is_reciprocal_gamma(self):
        for s in (0.25, 0.75, 1.0, 2.5, 7.0):
            got = mittag_leffler(MLParams(1.7, s), 0.0)
            assert got == pytest.approx(math.exp(-log_gamma(s)), rel=1e-14)
        assert mittag_leffler(MLParams(1.7, 0.0), 0.0) == 0.0

    @given(
        # index scale >= 1 matches every in-scope use (r = 1/a with a <= 1)
        # and keeps the series inside binary64 at desk-scale arguments
        st.floats(min_value=1.0, max_value=3.0),
        st.floats(min_value=0.1, max_value=5.0),
        st.floats(min_value=0.0, max_value=20.0),
        st.floats(min_value=1e-3, max_value=5.0),
    )
    @settings(max_examples=100)
    def test_strictly_increasing_in_zeta(self, r, s, zeta, step):
        params = MLParams(r, s)
        assert mittag_leffler(params, zeta + step) > mittag_leffler(params, zeta)

    def test_negative_argument_rejected(self):
        with pytest.raises(ValueError):
            mittag_leffler(MLParams(1.0, 1.0), -0.5)

    def test_term_cap_is_an_explicit_failure(self, monkeypatch):
        monkeypatch.setattr(specfn, "ML_MAX_TERMS", 3)
        with pytest.raises(ConvergenceError):
            mittag_leffler(MLParams(1.0, 1.0), 10.0)
