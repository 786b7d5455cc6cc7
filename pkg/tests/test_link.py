import dataclasses
import math

import numpy as np
import pytest

from swipt_relay.channel import make_rng, sample_gains
from swipt_relay.link import (
    DegenerateChannelError,
    conditional_outage,
    f_of_rho,
    full_csi_coefficients,
    h_threshold,
    harvested_energy,
    harvested_power,
    rho_max,
    sigma0_sq,
    snr,
    snr_via_beta,
    w_ratio,
)
from swipt_relay.params import SystemParams, dbm_to_linear

GAMMA_0 = 7.0

# Regression constant for the headline operating point (P_s=40 dBm, noise
# -20/-20/-17 dBm, h_sq=g_sq=1.5, rho=0.5), confirmed by independent hand
# arithmetic on both algebraic SNR forms.
SNR_AT_HALF = 265001.12632334145


def random_params(rng):
    return SystemParams(
        p_s=dbm_to_linear(rng.uniform(20.0, 50.0)),
        sigma_r_sq=dbm_to_linear(rng.uniform(-30.0, -10.0)),
        sigma_p_sq=dbm_to_linear(rng.uniform(-30.0, -10.0)),
        sigma_d_sq=dbm_to_linear(rng.uniform(-30.0, -10.0)),
        rate=3.0,
    )


def random_gain(rng, n=None):
    return np.exp(rng.uniform(np.log(0.01), np.log(10.0), n))


class TestHarvestedPower:
    def test_reference_value(self, ref_params):
        # eps=1, rho=1: P_r = P_s*h_sq + sigma_r_sq
        assert harvested_power(ref_params, 1.5, 1.0) == pytest.approx(15000.01, rel=1e-12)

    def test_vanishes_with_rho(self, ref_params):
        assert harvested_power(ref_params, 1.5, 0.0) == 0.0

    def test_linear_in_epsilon(self, ref_params):
        half = dataclasses.replace(ref_params, epsilon=0.5)
        assert harvested_power(half, 1.5, 0.7) == pytest.approx(
            0.5 * harvested_power(ref_params, 1.5, 0.7), rel=1e-15
        )

    def test_energy_is_power_times_half_block(self, ref_params):
        p = dataclasses.replace(ref_params, block_duration=4.0)
        assert harvested_energy(p, 1.5, 0.3) == pytest.approx(
            2.0 * harvested_power(p, 1.5, 0.3), rel=1e-15
        )


class TestSnr:
    def test_zero_at_endpoints(self, ref_params):
        assert snr(ref_params, 1.5, 1.5, 0.0) == 0.0
        assert snr(ref_params, 1.5, 1.5, 1.0) == 0.0

    def test_regression_value(self, ref_params):
        assert float(snr(ref_params, 1.5, 1.5, 0.5)) == pytest.approx(
            SNR_AT_HALF, rel=1e-12
        )

    def test_nonnegative_on_unit_interval(self, ref_params):
        rho = np.linspace(0.0, 1.0, 1001)
        assert np.all(snr(ref_params, 1.5, 1.5, rho) >= 0.0)

    def test_denominator_positive_randomized(self):
        # gamma is finite everywhere on [0,1], endpoints included
        rng = make_rng(11)
        rho = np.linspace(0.0, 1.0, 101)
        for _ in range(200):
            p = random_params(rng)
            vals = snr(p, float(random_gain(rng)), float(random_gain(rng)), rho)
            assert np.all(np.isfinite(vals))

    def test_epsilon_scales_relay_power_term(self, ref_params):
        # smaller epsilon means less relay power, so SNR can only drop
        low = dataclasses.replace(ref_params, epsilon=0.5)
        assert float(snr(low, 1.5, 1.5, 0.5)) < float(snr(ref_params, 1.5, 1.5, 0.5))


class TestSnrBetaIdentity:
    def test_agreement_midrange(self, ref_params):
        a = float(snr(ref_params, 1.5, 1.5, 0.3))
        b = float(snr_via_beta(ref_params, 1.5, 1.5, 0.3))
        assert a == pytest.approx(b, rel=1e-12)

    def test_agreement_near_boundary(self, ref_params):
        a = float(snr(ref_params, 1.5, 1.5, 0.999))
        b = float(snr_via_beta(ref_params, 1.5, 1.5, 0.999))
        assert a == pytest.approx(b, rel=1e-12)

    def test_randomized_identity(self):
        rng = make_rng(12)
        for _ in range(100):
            p = random_params(rng)
            h = random_gain(rng, 100)
            g = random_gain(rng, 100)
            rho = rng.uniform(1e-6, 1 - 1e-6, 100)
            a = snr(p, h, g, rho)
            b = snr_via_beta(p, h, g, rho)
            np.testing.assert_allclose(a, b, rtol=1e-10)

    @pytest.mark.parametrize("rho", [0.0, 1.0])
    def test_rejects_boundary(self, ref_params, rho):
        with pytest.raises(ValueError):
            snr_via_beta(ref_params, 1.5, 1.5, rho)


class TestFOfRho:
    def test_zero_at_origin(self, ref_params):
        assert f_of_rho(ref_params, 1.5, GAMMA_0, 0.0) == 0.0

    def test_zero_at_rho_max(self, ref_params):
        r = float(rho_max(ref_params, 1.5, GAMMA_0))
        assert abs(float(f_of_rho(ref_params, 1.5, GAMMA_0, r))) < 1e-8 * ref_params.p_s

    def test_nonpositive_below_threshold(self, ref_params):
        h0 = h_threshold(ref_params, GAMMA_0)
        rho = np.linspace(1e-6, 1 - 1e-6, 10001)
        assert np.all(f_of_rho(ref_params, h0 / 2, GAMMA_0, rho) <= 0.0)

    def test_sign_matches_feasible_interval(self):
        rng = make_rng(13)
        rho = np.linspace(1e-6, 1 - 1e-6, 2001)
        for _ in range(100):
            p = random_params(rng)
            h = float(random_gain(rng))
            if h <= h_threshold(p, GAMMA_0):
                continue
            r_max = float(rho_max(p, h, GAMMA_0))
            f = f_of_rho(p, h, GAMMA_0, rho)
            np.testing.assert_array_equal(f > 0, rho < r_max)


class TestSigma0Sq:
    def test_at_rho_one(self, ref_params):
        p = ref_params
        expected = p.sigma_p_sq * p.sigma_d_sq / (p.p_s * 1.5 + p.sigma_r_sq)
        assert float(sigma0_sq(p, 1.5, 1.0)) == pytest.approx(expected, rel=1e-12)
        assert float(sigma0_sq(p, 1.5, 1.0)) > 0

    def test_at_rho_zero(self, ref_params):
        p = ref_params
        expected = p.sigma_d_sq * (1 + p.sigma_p_sq / (p.p_s * 1.5 + p.sigma_r_sq))
        assert float(sigma0_sq(p, 1.5, 0.0)) == pytest.approx(expected, rel=1e-12)

    def test_monotone_decreasing(self, ref_params):
        rho = np.linspace(0.0, 1.0, 101)
        vals = sigma0_sq(ref_params, 1.5, rho)
        assert np.all(np.diff(vals) < 0)


class TestRhoMax:
    def test_zero_at_threshold(self, ref_params):
        h0 = h_threshold(ref_params, GAMMA_0)
        assert float(rho_max(ref_params, h0, GAMMA_0)) == pytest.approx(0.0, abs=1e-12)

    def test_reference_value(self):
        p = SystemParams(p_s=10000.0, sigma_r_sq=0.01, sigma_p_sq=0.01,
                         sigma_d_sq=0.02, rate=3.0)
        # (15000 - 0.14) / (15000 - 0.07), direct arithmetic
        assert float(rho_max(p, 1.5, GAMMA_0)) == pytest.approx(
            (15000 - 0.14) / (15000 - 0.07), rel=1e-12
        )

    def test_negative_when_infeasible(self):
        p = SystemParams(p_s=10000.0, sigma_r_sq=0.01, sigma_p_sq=0.01,
                         sigma_d_sq=0.02, rate=3.0)
        h0 = h_threshold(p, GAMMA_0)
        h = h0 * 0.9  # still above gamma_0*sr^2/P_s = 7e-6
        assert p.p_s * h > GAMMA_0 * p.sigma_r_sq
        assert float(rho_max(p, h, GAMMA_0)) < 0

    def test_degenerate_channel_raises(self):
        p = SystemParams(p_s=10000.0, sigma_r_sq=0.01, sigma_p_sq=0.01,
                         sigma_d_sq=0.02, rate=3.0)
        h = GAMMA_0 * p.sigma_r_sq / p.p_s
        with pytest.raises(DegenerateChannelError):
            rho_max(p, h, GAMMA_0)


class TestHThreshold:
    def test_reference_value(self):
        p = SystemParams(p_s=10000.0, sigma_r_sq=0.01, sigma_p_sq=0.01,
                         sigma_d_sq=0.02, rate=3.0)
        assert h_threshold(p, GAMMA_0) == pytest.approx(1.4e-5, rel=1e-12)

    def test_vanishes_with_gamma0(self, ref_params):
        assert h_threshold(ref_params, 0.0) == 0.0

    def test_inverse_in_p_s(self, ref_params):
        doubled = dataclasses.replace(ref_params, p_s=2 * ref_params.p_s)
        assert h_threshold(doubled, GAMMA_0) == pytest.approx(
            h_threshold(ref_params, GAMMA_0) / 2, rel=1e-12
        )


class TestWRatio:
    def test_zero_at_rho_max(self, ref_params):
        r = float(rho_max(ref_params, 1.5, GAMMA_0))
        w_peak = float(w_ratio(ref_params, 1.5, GAMMA_0, 0.5))
        assert abs(float(w_ratio(ref_params, 1.5, GAMMA_0, r))) < 1e-8 * w_peak

    def test_vanishes_at_origin(self, ref_params):
        assert abs(float(w_ratio(ref_params, 1.5, GAMMA_0, 1e-12))) < 1e-6

    def test_concavity_midpoint(self):
        rng = make_rng(14)
        for _ in range(200):
            p = random_params(rng)
            h = float(random_gain(rng))
            if h <= h_threshold(p, GAMMA_0):
                continue
            r_max = min(float(rho_max(p, h, GAMMA_0)), 1.0)
            if r_max <= 0:
                continue
            r1, r2 = sorted(rng.uniform(1e-6, r_max - 1e-9, 2))
            mid = float(w_ratio(p, h, GAMMA_0, 0.5 * (r1 + r2)))
            avg = 0.5 * (float(w_ratio(p, h, GAMMA_0, r1)) + float(w_ratio(p, h, GAMMA_0, r2)))
            assert mid >= avg - 1e-9 * abs(avg)


class TestConditionalOutage:
    def test_certain_below_threshold(self, ref_params):
        h0 = h_threshold(ref_params, GAMMA_0)
        for rho in (0.1, 0.5, 0.9, 1.0):
            assert conditional_outage(ref_params, h0 / 2, rho, 1.5, GAMMA_0) == 1.0

    def test_rho_one_is_certain_outage(self, ref_params):
        assert conditional_outage(ref_params, 1.5, 1.0, 1.5, GAMMA_0) == 1.0

    def test_vanishes_for_huge_lambda_g(self, ref_params):
        p = conditional_outage(ref_params, 1.5, 0.5, 1e12, GAMMA_0)
        assert 0 <= p < 1e-9

    def test_in_unit_interval(self):
        rng = make_rng(15)
        for _ in range(200):
            p = random_params(rng)
            h = float(random_gain(rng))
            rho = float(rng.uniform(0.01, 1.0))
            val = conditional_outage(p, h, rho, float(rng.uniform(0.1, 10)), GAMMA_0)
            assert 0.0 <= val <= 1.0

    def test_monotone_in_lambda_g(self, ref_params):
        lams = np.array([0.5, 1.0, 2.0, 4.0, 8.0])
        vals = [conditional_outage(ref_params, 1.5, 0.5, lam, GAMMA_0) for lam in lams]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_monotone_in_h(self, ref_params):
        hs = [0.1, 0.5, 1.0, 2.0, 5.0]
        vals = [conditional_outage(ref_params, h, 0.5, 1.5, GAMMA_0) for h in hs]
        assert all(a >= b for a, b in zip(vals, vals[1:]))

    def test_against_mc_over_g(self, ref_params):
        # the closed form is the expectation over the exponential g; check it
        # against raw outage frequency on 1e6 g draws at fixed (h, rho)
        rng = make_rng(16)
        lam_g, rho, h = 1.5, 0.5, 0.01  # weak first hop so outage events are plentiful
        analytic = conditional_outage(ref_params, h, rho, lam_g, GAMMA_0)
        n = 10**6
        g = sample_gains(rng, lam_g, n)
        gamma = snr(ref_params, h, g, rho)
        emp = float(np.mean(gamma < GAMMA_0))
        se = math.sqrt(analytic * (1 - analytic) / n)
        assert abs(emp - analytic) <= 3 * se


class TestCoefficientIdentities:
    def test_discriminant_identity(self):
        rng = make_rng(17)
        for _ in range(500):
            p = random_params(rng)
            co = full_csi_coefficients(p, float(random_gain(rng)), float(random_gain(rng)))
            lhs = co.b1 ** 2 - 4 * co.a1 * co.c1
            rhs = 4 * co.c1 * (co.c1 - co.a1)
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_b1_is_minus_two_c1(self, ref_params):
        co = full_csi_coefficients(ref_params, 1.5, 1.5)
        assert co.b1 == -2.0 * co.c1

    def test_reference_coefficients(self, ref_params):
        co = full_csi_coefficients(ref_params, 1.5, 1.5)
        assert co.a1 == pytest.approx(4.953e-3, rel=1e-3)
        assert co.c1 == pytest.approx(1.9953e-2, rel=1e-3)
