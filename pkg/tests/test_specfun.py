"""Special-function kernels against independent high-precision oracles.

Frozen reference values come from tools/compute_oracle_constants.py
(mpmath at 60 digits).
"""

import math

import numpy as np
import pytest

from wptregion import specfun

# 30-term truncated power series, mpmath 60 dps
I0_SERIES30_AT_1 = 1.266065877752008335598245
I1_SERIES30_AT_2 = 1.590636854637329063382254

# ln I0 / ln I1 across both evaluation branches, mpmath 60 dps
LOG_I0 = {
    0.5: 0.06154971918548130394128457,
    1.0: 0.2359143585071786486894148,
    2.0: 0.8239935414829562829313378,
    5.0: 3.304681775822533433845831,
    10.0: 7.942972083118695554494865,
    25.0: 22.47672800499924375933059,
    29.5: 26.89317812205843855272183,
    30.5: 27.87636609254270671914368,
    50.0: 47.127575501871804584163,
    120.0: 116.6883616405231659040125,
    300.0: 296.2295875930022288383501,
    700.0: 695.8056999984434490768029,
}
LOG_I1 = {
    0.5: -1.355205447025334464487995,
    2.0: 0.4641344735461597442558639,
    10.0: 7.890203834104212293515498,
    29.5: 26.87593232821715330256517,
    30.5: 27.8596954429134857056177,
    120.0: 116.6841774785949469853521,
    700.0: 695.8049852018556523307128,
}


class TestLambertW:
    def test_zero(self):
        assert specfun.lambert_w0(0.0) == 0.0

    def test_at_e(self):
        assert specfun.lambert_w0(math.e) == pytest.approx(1.0, rel=1e-13)

    def test_defining_identity(self):
        x = 7.5
        assert specfun.lambert_w0(x * math.exp(x)) == pytest.approx(x, rel=1e-12)

    def test_identity_on_grid(self):
        for x in np.arange(0.0, 10.0 + 1e-12, 0.1):
            u = x * math.exp(x)
            assert specfun.lambert_w0(u) == pytest.approx(x, rel=1e-10, abs=1e-13)

    def test_monotone(self):
        grid = np.concatenate([np.linspace(0.0, 10.0, 101), np.logspace(1, 12, 40)])
        vals = [specfun.lambert_w0(float(u)) for u in grid]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            specfun.lambert_w0(-1.0)

    def test_log_path_consistency(self):
        # w + ln w = L must agree with the direct branch where both work
        for u in (1e3, 1e6, 1e12):
            direct = specfun.lambert_w0(u)
            via_log = specfun.lambert_w0_log(math.log(u))
            assert via_log == pytest.approx(direct, rel=1e-12)

    def test_log_path_huge(self):
        w = specfun.lambert_w0_log(700.0)
        assert w + math.log(w) == pytest.approx(700.0, rel=1e-13)


class TestBesselI0:
    def test_at_zero(self):
        assert specfun.bessel_i0(0.0) == 1.0

    def test_series_oracle(self):
        assert specfun.bessel_i0(1.0) == pytest.approx(I0_SERIES30_AT_1, rel=1e-12)

    def test_log_matches_direct(self):
        assert math.exp(specfun.bessel_i0_log(5.0)) == pytest.approx(
            specfun.bessel_i0(5.0), rel=1e-12
        )

    def test_log_oracle_both_branches(self):
        for x, ref in LOG_I0.items():
            assert specfun.bessel_i0_log(x) == pytest.approx(ref, rel=1e-12), x

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            specfun.bessel_i0(710.0)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            specfun.bessel_i0(-0.1)
        with pytest.raises(ValueError):
            specfun.bessel_i0_log(-0.1)


class TestBesselI1:
    def test_at_zero(self):
        assert specfun.bessel_i1(0.0) == 0.0
        assert specfun.bessel_i1_log(0.0) == -math.inf

    def test_series_oracle(self):
        assert specfun.bessel_i1(2.0) == pytest.approx(I1_SERIES30_AT_2, rel=1e-12)

    def test_log_oracle_both_branches(self):
        for x, ref in LOG_I1.items():
            assert specfun.bessel_i1_log(x) == pytest.approx(ref, rel=1e-12), x

    def test_derivative_of_i0(self):
        # d/dx I0 = I1, central differences
        h = 1e-6
        for x in np.linspace(0.2, 12.0, 20):
            fd = (specfun.bessel_i0(x + h) - specfun.bessel_i0(x - h)) / (2.0 * h)
            assert specfun.bessel_i1(float(x)) == pytest.approx(fd, rel=1e-6)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            specfun.bessel_i1(-2.0)


class TestProperties:
    def test_i0_at_least_one_and_monotone(self):
        xs = np.linspace(0.0, 60.0, 121)
        vals = [specfun.bessel_i0(float(x)) if x <= 700 else None for x in xs]
        assert all(v >= 1.0 for v in vals)
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_i1_nonnegative_monotone(self):
        xs = np.linspace(0.0, 60.0, 121)
        vals = [specfun.bessel_i1(float(x)) for x in xs]
        assert all(v >= 0.0 for v in vals)
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_no_overflow_in_composite(self):
        # ln(a e^a I0(x)) stays finite deep into saturation
        a = 1.29
        log_ae_a = math.log(a) + a
        for x in np.linspace(0.0, 700.0, 71):
            val = log_ae_a + specfun.bessel_i0_log(float(x))
            assert math.isfinite(val)
            w = specfun.lambert_w0_log(val) if val > 1.0 else specfun.lambert_w0(math.exp(val))
            assert math.isfinite(w)
