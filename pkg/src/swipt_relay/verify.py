"""Randomized verification batteries: closed forms vs brute-force oracles.

Each battery draws random operating points (transmit power and noise figures
uniform in dBm, channel gains log-uniform) and checks a closed-form result
against an independent route: grid search for the policy optima, the literal
beta-form SNR for the algebraic identity, and the semi-analytic estimator for
the Monte Carlo one. The CLI `verify` command runs all of them; the
acceptance tests run the same code at full instance counts.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import FadingParams, make_rng
from .link import snr, snr_via_beta, w_ratio
from .params import SystemParams, dbm_to_linear
from .policy import (
    Fixed,
    PartialCSI,
    full_csi_rho,
    oracle_grid_full,
    oracle_grid_partial,
    partial_csi_rho,
)
from .sim import outage_mc, outage_semi_analytic

__all__ = [
    "BatteryResult",
    "random_instances",
    "battery_full_csi",
    "battery_partial_csi",
    "battery_snr_identity",
    "battery_estimator_cross_check",
    "run_all",
]

DEFAULT_RATE = 3.0  # bits/sec/Hz, gives gamma_0 = 7


@dataclass(frozen=True)
class BatteryResult:
    name: str
    passed: bool
    detail: str


def random_instances(rng, count):
    """Random (params, h_sq, g_sq) instances covering a wide operating range.

    P_s uniform in [20, 50] dBm, each noise variance uniform in [-30, -10] dBm,
    channel gains log-uniform in [0.01, 10].
    """
    out = []
    for _ in range(count):
        params = SystemParams(
            p_s=dbm_to_linear(rng.uniform(20.0, 50.0)),
            sigma_r_sq=dbm_to_linear(rng.uniform(-30.0, -10.0)),
            sigma_p_sq=dbm_to_linear(rng.uniform(-30.0, -10.0)),
            sigma_d_sq=dbm_to_linear(rng.uniform(-30.0, -10.0)),
            rate=DEFAULT_RATE,
        )
        h_sq = float(np.exp(rng.uniform(np.log(0.01), np.log(10.0))))
        g_sq = float(np.exp(rng.uniform(np.log(0.01), np.log(10.0))))
        out.append((params, h_sq, g_sq))
    return out


def battery_full_csi(count=10_000, step=1e-4, seed=2024, corrupt=False) -> BatteryResult:
    """Closed-form SNR-optimal rho vs grid argmax.

    Checks |rho_closed - rho_grid| <= 2*step and that the closed form's SNR is
    never below the grid's best by more than 1e-9 relative. `corrupt` is a
    fault-injection hook: it perturbs the closed-form rho so the battery must
    fail, proving the check has teeth.
    """
    rng = make_rng(seed)
    worst_drho, worst_rel = 0.0, 0.0
    for params, h_sq, g_sq in random_instances(rng, count):
        rho_cf = float(full_csi_rho(params, h_sq, g_sq))
        if corrupt:
            rho_cf = min(rho_cf + 0.05, 0.999999)
        rho_grid = oracle_grid_full(params, h_sq, g_sq, step)
        snr_cf = float(snr(params, h_sq, g_sq, rho_cf))
        snr_grid = float(snr(params, h_sq, g_sq, rho_grid))
        worst_drho = max(worst_drho, abs(rho_cf - rho_grid))
        worst_rel = max(worst_rel, (snr_grid - snr_cf) / snr_grid)
    passed = worst_drho <= 2 * step and worst_rel <= 1e-9
    return BatteryResult(
        "full_csi_vs_grid", passed,
        f"count={count} max|drho|={worst_drho:.3g} max_rel_snr_deficit={worst_rel:.3g}",
    )


def battery_partial_csi(count=10_000, step=1e-4, seed=2025, corrupt=False) -> BatteryResult:
    """Closed-form partial-CSI rho vs grid argmax of W over the feasible set."""
    rng = make_rng(seed)
    gamma_0 = 2.0 ** DEFAULT_RATE - 1.0
    worst_drho, worst_rel, bad_infeasible = 0.0, 0.0, 0
    for params, h_sq, _ in random_instances(rng, count):
        dec_cf = partial_csi_rho(params, h_sq, gamma_0)
        dec_grid = oracle_grid_partial(params, h_sq, gamma_0, step)
        if not dec_grid.transmitting:
            if dec_cf.rho != 1.0:
                bad_infeasible += 1
            continue
        rho_cf = min(dec_cf.rho + 0.05, 0.999999) if corrupt else dec_cf.rho
        worst_drho = max(worst_drho, abs(rho_cf - dec_grid.rho))
        w_cf = float(w_ratio(params, h_sq, gamma_0, rho_cf))
        w_grid = float(w_ratio(params, h_sq, gamma_0, dec_grid.rho))
        if w_grid > 0:
            worst_rel = max(worst_rel, (w_grid - w_cf) / w_grid)
    passed = worst_drho <= 2 * step and worst_rel <= 1e-9 and bad_infeasible == 0
    return BatteryResult(
        "partial_csi_vs_grid", passed,
        f"count={count} max|drho|={worst_drho:.3g} max_rel_w_deficit={worst_rel:.3g} "
        f"bad_infeasible={bad_infeasible}",
    )


def battery_snr_identity(count=100_000, seed=2026, tol=1e-10) -> BatteryResult:
    """snr() vs the literal beta-form on random inputs with rho in [1e-6, 1-1e-6]."""
    rng = make_rng(seed)
    worst = 0.0
    chunk = 10_000
    remaining = count
    while remaining > 0:
        m = min(chunk, remaining)
        remaining -= m
        params = SystemParams(
            p_s=dbm_to_linear(float(rng.uniform(20.0, 50.0))),
            sigma_r_sq=dbm_to_linear(float(rng.uniform(-30.0, -10.0))),
            sigma_p_sq=dbm_to_linear(float(rng.uniform(-30.0, -10.0))),
            sigma_d_sq=dbm_to_linear(float(rng.uniform(-30.0, -10.0))),
            rate=DEFAULT_RATE,
        )
        h_sq = np.exp(rng.uniform(np.log(0.01), np.log(10.0), m))
        g_sq = np.exp(rng.uniform(np.log(0.01), np.log(10.0), m))
        rho = rng.uniform(1e-6, 1.0 - 1e-6, m)
        a = snr(params, h_sq, g_sq, rho)
        b = snr_via_beta(params, h_sq, g_sq, rho)
        worst = max(worst, float(np.max(np.abs(a - b) / np.abs(b))))
    passed = worst <= tol
    return BatteryResult("snr_identity", passed, f"count={count} max_rel_err={worst:.3g}")


def battery_estimator_cross_check(n=200_000, seed=2027) -> BatteryResult:
    """outage_mc vs outage_semi_analytic within 3 combined standard errors."""
    params = SystemParams(
        p_s=dbm_to_linear(40.0),
        sigma_r_sq=dbm_to_linear(-20.0),
        sigma_p_sq=dbm_to_linear(-20.0),
        sigma_d_sq=dbm_to_linear(-17.0),
        rate=DEFAULT_RATE,
    )
    fading = FadingParams(lambda_h=1.5, lambda_g=1.5)
    gamma_0 = params.gamma_0
    details, passed = [], True
    for policy in (PartialCSI(), Fixed(0.6)):
        mc = outage_mc(params, fading, policy, gamma_0, n, seed)
        sa = outage_semi_analytic(params, fading, policy, gamma_0, n, seed + 1)
        gap = abs(mc.p_out - sa.p_out)
        limit = 3.0 * np.hypot(mc.std_err, sa.std_err)
        ok = gap <= limit
        passed = passed and ok
        details.append(f"{type(policy).__name__}: gap={gap:.3g} limit={limit:.3g}")
    return BatteryResult("mc_vs_semi_analytic", passed, "; ".join(details))


def run_all(quick=False, corrupt=False):
    """Run every battery; `quick` shrinks instance counts, not coverage."""
    scale = 10 if quick else 1
    return [
        battery_full_csi(count=10_000 // scale, corrupt=corrupt),
        battery_partial_csi(count=10_000 // scale),
        battery_snr_identity(count=100_000 // scale),
        battery_estimator_cross_check(n=200_000 // scale),
    ]
