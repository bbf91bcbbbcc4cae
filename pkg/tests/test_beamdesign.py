"""Four-region SCA beamforming against closed-form oracles."""

import numpy as np
import pytest

from wptregion import ehmodel
from wptregion.beamdesign import (
    ChannelPair,
    Weights,
    compute_phi_point,
    psi_of_w,
    sca_maximize_region,
)
from wptregion.channel import ChannelConfig, draw_channel_pair
from wptregion.ehmodel import RectennaParams

PARAMS = RectennaParams()


def scaled_pair(nt, seed, realization, scale):
    pair = draw_channel_pair(ChannelConfig(n_t=nt, seed=seed), realization)
    return ChannelPair(g1=pair.g1 * scale, g2=pair.g2 * scale, n_t=nt)


class TestPsiOfW:
    def setup_method(self):
        self.pair = scaled_pair(4, 3, 0, 1.0)
        self.weights = Weights(0.3, 0.7)

    def test_zero_vector(self):
        assert psi_of_w(np.zeros(4), self.pair, self.weights, PARAMS) == 0.0

    def test_both_saturated(self):
        # enormous power along a mixed direction saturates both nodes
        w = 1e6 * (self.pair.g1.conj() + self.pair.g2.conj())
        assert psi_of_w(w, self.pair, self.weights, PARAMS) == pytest.approx(
            ehmodel.phi(PARAMS.p_sat, PARAMS), rel=1e-12
        )

    def test_mrt_single_user(self):
        nu = 10.0
        g1 = self.pair.g1
        w = np.sqrt(nu) * g1.conj() / np.linalg.norm(g1)
        got = psi_of_w(w, self.pair, Weights(1.0, 0.0), PARAMS)
        assert got == pytest.approx(
            ehmodel.phi(nu * np.linalg.norm(g1) ** 2, PARAMS), rel=1e-12
        )


class TestScaRegion:
    def test_origin_region_zero_power(self):
        pair = scaled_pair(4, 3, 0, 1.0)
        out = sca_maximize_region((0, 0), 0.0, pair, Weights(0.5, 0.5), PARAMS, seed=1)
        assert out is not None
        assert out.value == 0.0
        assert np.allclose(out.w_mat, 0.0)

    def test_saturation_region_infeasible_at_low_power(self):
        pair = scaled_pair(4, 3, 0, 1.0)
        # nu ||g||^2 far below p_sat for both nodes
        for region in ((1, 0), (0, 1), (1, 1)):
            assert sca_maximize_region(region, 1.0, pair, Weights(0.5, 0.5), PARAMS, seed=1) is None

    def test_histories_non_decreasing(self):
        pair = scaled_pair(4, 3, 0, 40.0)
        for nu in (0.1, 0.5, 2.0, 5.0):
            for region in ((0, 0), (0, 1), (1, 0), (1, 1)):
                out = sca_maximize_region(region, nu, pair, Weights(0.4, 0.6), PARAMS, seed=11)
                if out is None:
                    continue
                for a, b in zip(out.history, out.history[1:]):
                    assert b >= a - 1e-9


class TestComputePhiPoint:
    def test_single_antenna_closed_form(self):
        pair = scaled_pair(1, 5, 0, 1.0)
        weights = Weights(0.4, 0.6)
        nu = 8.0
        pt = compute_phi_point(nu, pair, weights, PARAMS, seed=2)
        want = weights.xi1 * ehmodel.phi(nu * abs(pair.g1[0]) ** 2, PARAMS) \
            + weights.xi2 * ehmodel.phi(nu * abs(pair.g2[0]) ** 2, PARAMS)
        assert pt.value == pytest.approx(want, rel=1e-9)
        assert abs(pt.w[0]) == pytest.approx(np.sqrt(nu), rel=1e-9)
        assert pt.w[0].imag == pytest.approx(0.0, abs=1e-12)

    def test_single_user_matches_mrt(self):
        # 20 random channels, unsaturated power: the exact optimum is scaled MRT
        count = 0
        for nt in (2, 4):
            for realization in range(10):
                pair = scaled_pair(nt, 17, realization, 1.0)
                nu = 0.5 * PARAMS.p_sat / np.linalg.norm(pair.g1) ** 2
                pt = compute_phi_point(nu, pair, Weights(1.0, 0.0), PARAMS, seed=4)
                want = ehmodel.phi(nu * np.linalg.norm(pair.g1) ** 2, PARAMS)
                assert pt.value == pytest.approx(want, rel=1e-4)
                count += 1
        assert count == 20

    def test_plateau_when_both_saturable(self):
        pair = scaled_pair(4, 3, 0, 40.0)
        nu = 12.0
        assert nu * np.linalg.norm(pair.g2) ** 2 > PARAMS.p_sat
        pt = compute_phi_point(nu, pair, Weights(0.5, 0.5), PARAMS, seed=6)
        assert pt.value == pytest.approx(ehmodel.phi(PARAMS.p_sat, PARAMS), abs=1e-12)
        q1 = abs(pair.g1 @ pt.w) ** 2
        q2 = abs(pair.g2 @ pt.w) ** 2
        assert q1 >= PARAMS.p_sat and q2 >= PARAMS.p_sat

    def test_value_re_evaluated_from_vector(self):
        pair = scaled_pair(4, 3, 1, 40.0)
        weights = Weights(0.25, 0.75)
        for nu in (0.2, 1.0, 4.0):
            pt = compute_phi_point(nu, pair, weights, PARAMS, seed=8)
            assert pt.value == pytest.approx(
                psi_of_w(pt.w, pair, weights, PARAMS), abs=1e-15
            )
            assert np.linalg.norm(pt.w) ** 2 <= nu + 1e-8
            assert pt.value <= ehmodel.phi(PARAMS.p_sat, PARAMS) + 1e-15

    def test_relaxation_consistency(self):
        pair = scaled_pair(4, 3, 2, 40.0)
        weights = Weights(0.5, 0.5)
        for nu in (0.3, 1.5, 6.0):
            pt = compute_phi_point(nu, pair, weights, PARAMS, seed=9)
            assert pt.value <= pt.psi_relaxed + 1e-6

    def test_monotone_in_power(self):
        pair = scaled_pair(4, 3, 0, 40.0)
        weights = Weights(0.5, 0.5)
        prev = -1.0
        for nu in np.linspace(0.0, 8.0, 33):
            pt = compute_phi_point(float(nu), pair, weights, PARAMS, seed=12)
            assert pt.value >= prev - 1e-9
            prev = pt.value

    def test_deterministic(self):
        pair = scaled_pair(4, 3, 0, 40.0)
        a = compute_phi_point(2.0, pair, Weights(0.5, 0.5), PARAMS, seed=(3, 4))
        b = compute_phi_point(2.0, pair, Weights(0.5, 0.5), PARAMS, seed=(3, 4))
        assert np.array_equal(a.w, b.w)
        assert a.value == b.value

    def test_phase_convention(self):
        pair = scaled_pair(4, 3, 0, 1.0)
        pt = compute_phi_point(3.0, pair, Weights(0.5, 0.5), PARAMS, seed=5)
        first = next(x for x in pt.w if abs(x) > 1e-12 * np.linalg.norm(pt.w))
        assert first.imag == pytest.approx(0.0, abs=1e-12)
        assert first.real > 0.0

    def test_negative_power_rejected(self):
        pair = scaled_pair(2, 3, 0, 1.0)
        with pytest.raises(ValueError):
            compute_phi_point(-1.0, pair, Weights(0.5, 0.5), PARAMS, seed=1)


class TestValidation:
    def test_weights(self):
        with pytest.raises(ValueError):
            Weights(0.6, 0.6)
        with pytest.raises(ValueError):
            Weights(-0.1, 1.1)

    def test_channel_pair(self):
        with pytest.raises(ValueError):
            ChannelPair(g1=np.zeros(2), g2=np.ones(2), n_t=2)
        with pytest.raises(ValueError):
            ChannelPair(g1=np.ones(3), g2=np.ones(2), n_t=2)
