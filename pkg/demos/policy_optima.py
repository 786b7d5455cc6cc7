"""Closed-form power-splitting optima vs a brute-force grid search.

For a handful of random channel draws this script computes the optimal
splitting ratio two ways — the closed-form expressions used by the dynamic
policies, and a dense grid search over the objective — and prints them
side by side. The two should agree to within the grid resolution.

Run:  python3 demos/policy_optima.py
"""
from swipt_relay.channel import FadingParams, make_rng, sample_channels
from swipt_relay.link import snr
from swipt_relay.params import SystemParams, dbm_to_linear
from swipt_relay.policy import (
    full_csi_rho,
    oracle_grid_full,
    oracle_grid_partial,
    partial_csi_rho,
)

params = SystemParams(
    p_s=dbm_to_linear(40.0),
    sigma_r_sq=dbm_to_linear(-20.0),
    sigma_p_sq=dbm_to_linear(-20.0),
    sigma_d_sq=dbm_to_linear(-17.0),
    rate=3.0,
)
gamma_0 = params.gamma_0
rng = make_rng(2024)
h_sqs, g_sqs = sample_channels(rng, FadingParams(lambda_h=1.5, lambda_g=1.5), 6)

STEP = 1e-5
print(f"target SNR gamma_0 = {gamma_0:g}, grid step = {STEP:g}\n")
print(f"{'h^2':>8} {'g^2':>8} | {'full cf':>10} {'full grid':>10} "
      f"| {'partial cf':>10} {'part grid':>10}")
for h_sq, g_sq in zip(h_sqs, g_sqs):
    full_cf = full_csi_rho(params, h_sq, g_sq)
    full_gr = oracle_grid_full(params, h_sq, g_sq, step=STEP)
    par_cf = partial_csi_rho(params, h_sq, gamma_0)
    par_gr = oracle_grid_partial(params, h_sq, gamma_0, step=STEP)
    print(f"{h_sq:8.4f} {g_sq:8.4f} | {full_cf:10.6f} {full_gr:10.6f} "
          f"| {par_cf.rho:10.6f} {par_gr.rho:10.6f}")

h_sq, g_sq = h_sqs[0], g_sqs[0]
best = full_csi_rho(params, h_sq, g_sq)
print(f"\nSNR profile around the full-CSI optimum for the first draw "
      f"(rho* = {best:.6f}):")
for rho in (best - 0.05, best, best + 0.05):
    print(f"  rho = {rho:.6f}  ->  snr = {snr(params, h_sq, g_sq, rho):.1f}")
