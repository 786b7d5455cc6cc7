"""Closed-form link math for the power-splitting AF relay.

The relay splits the received power with ratio rho: a fraction rho feeds the
energy harvester and powers the relay's own transmission, the remaining
1 - rho feeds the information path. Everything here is a pure function of
(params, channel gains, rho); all functions broadcast over numpy arrays.

Two algebraically equivalent SNR forms are kept on purpose. snr() is the
polynomial-denominator form, finite on all of [0, 1]; snr_via_beta() goes
literally through the AF normalization factor beta and the relay transmit
power, has removable singularities at rho in {0, 1}, and exists only as an
independent cross-check of snr().
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DegenerateChannelError",
    "FullCsiCoefficients",
    "PartialCsiCoefficients",
    "harvested_power",
    "harvested_energy",
    "snr",
    "snr_via_beta",
    "f_of_rho",
    "sigma0_sq",
    "rho_max",
    "h_threshold",
    "w_ratio",
    "conditional_outage",
    "full_csi_coefficients",
    "partial_csi_coefficients",
]


class DegenerateChannelError(ValueError):
    """P_s*|h|^2 coincides exactly with gamma_0*sigma_r^2; feasible set is empty."""


@dataclass(frozen=True)
class FullCsiCoefficients:
    """Quadratic coefficients of the SNR-derivative numerator a1*rho^2 + b1*rho + c1.

    b1 = -2*c1 always, so the discriminant reduces to 4*c1*(c1 - a1) with
    c1 - a1 > 0 for positive parameters; the optimum is a real interior root.
    """
    a1: float | np.ndarray
    b1: float | np.ndarray
    c1: float | np.ndarray


@dataclass(frozen=True)
class PartialCsiCoefficients:
    """Coefficients of dW/drho = a2 - c2/(rho - b2)^2 for the partial-CSI objective."""
    a2: float | np.ndarray
    b2: float | np.ndarray
    c2: float | np.ndarray


def harvested_power(params, h_sq, rho):
    """Relay transmit power P_r = eps * rho * (P_s*|h|^2 + sigma_r^2), mW.

    The harvest phase lasts T/2 and the forward phase lasts T/2, so the block
    length cancels and P_r equals the average harvested power.
    """
    return params.epsilon * rho * (params.p_s * h_sq + params.sigma_r_sq)


def harvested_energy(params, h_sq, rho):
    """Energy harvested in one block: P_r * T/2 (bookkeeping helper)."""
    return harvested_power(params, h_sq, rho) * params.block_duration / 2.0


def snr(params, h_sq, g_sq, rho):
    """End-to-end SNR gamma(rho), finite on all of rho in [0, 1].

    Denominator (all terms mW):
        g^2*sr^2*rho*(1-rho) + g^2*sp^2*rho + sd^2*((1-rho) + sp^2/(P_s h^2 + sr^2))/eps
    which is strictly positive on [0, 1], so gamma(0) = gamma(1) = 0 exactly.
    With eps = 1 this is the standard polynomial form of the AF SNR.
    """
    rho = np.asarray(rho, dtype=float)
    ps_h = params.p_s * h_sq + params.sigma_r_sq
    num = params.p_s * h_sq * g_sq * rho * (1.0 - rho)
    den = (
        g_sq * params.sigma_r_sq * rho * (1.0 - rho)
        + g_sq * params.sigma_p_sq * rho
        + params.sigma_d_sq * ((1.0 - rho) + params.sigma_p_sq / ps_h) / params.epsilon
    )
    return num / den


def snr_via_beta(params, h_sq, g_sq, rho):
    """Literal SNR through beta(rho) and P_r; valid only for 0 < rho < 1.

    gamma = P_s h^2 g^2 / (g^2 sr^2 + g^2 sp^2/(1-rho) + sd^2/(P_r beta^2 (1-rho)))
    Kept as an independent algebraic route for equivalence testing against snr().
    """
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0.0) or np.any(rho >= 1.0):
        raise ValueError("snr_via_beta requires 0 < rho < 1")
    ps_h = params.p_s * h_sq + params.sigma_r_sq
    p_r = harvested_power(params, h_sq, rho)
    beta_sq = 1.0 / ((1.0 - rho) * ps_h + params.sigma_p_sq)
    den = (
        g_sq * params.sigma_r_sq
        + g_sq * params.sigma_p_sq / (1.0 - rho)
        + params.sigma_d_sq / (p_r * beta_sq * (1.0 - rho))
    )
    return params.p_s * h_sq * g_sq / den


def f_of_rho(params, h_sq, gamma_0, rho):
    """F(rho) = P_s h^2 rho(1-rho) - gamma_0*(-rho^2 sr^2 + rho sr^2 + rho sp^2).

    The g-independent numerator margin of the outage condition: the feasible
    set is exactly {rho in (0,1) : F(rho) > 0}.
    """
    rho = np.asarray(rho, dtype=float)
    return params.p_s * h_sq * rho * (1.0 - rho) - gamma_0 * (
        -(rho ** 2) * params.sigma_r_sq + rho * params.sigma_r_sq + rho * params.sigma_p_sq
    )


def sigma0_sq(params, h_sq, rho):
    """Effective noise sigma_0^2(rho) = sd^2*(1-rho) + sp^2*sd^2/(P_s h^2 + sr^2).

    Strictly positive on (0, 1] and affine decreasing in rho.
    """
    rho = np.asarray(rho, dtype=float)
    ps_h = params.p_s * h_sq + params.sigma_r_sq
    return params.sigma_d_sq * (1.0 - rho) + params.sigma_p_sq * params.sigma_d_sq / ps_h


def rho_max(params, h_sq, gamma_0):
    """Upper boundary of the feasible set: root of F(rho) = 0 above zero.

    Returns (P_s h^2 - sr^2 g0 - sp^2 g0) / (P_s h^2 - sr^2 g0). A value
    <= 0 means the feasible set is empty. An exactly zero denominator is a
    degenerate channel and raises; callers treat it as infeasible.
    """
    num = params.p_s * h_sq - params.sigma_r_sq * gamma_0 - params.sigma_p_sq * gamma_0
    den = params.p_s * h_sq - params.sigma_r_sq * gamma_0
    if np.any(np.asarray(den) == 0.0):
        raise DegenerateChannelError("P_s*|h|^2 == gamma_0*sigma_r^2")
    return num / den


def h_threshold(params, gamma_0):
    """Channel-gain threshold H0 = gamma_0*(sr^2 + sp^2)/P_s.

    For |h|^2 <= H0 the feasible set is empty and outage is certain for every
    rho, so the only sensible action is to harvest everything.
    """
    return gamma_0 * (params.sigma_r_sq + params.sigma_p_sq) / params.p_s


def w_ratio(params, h_sq, gamma_0, rho):
    """W(rho) = F(rho)/sigma_0^2(rho); maximizing W minimizes conditional outage."""
    return f_of_rho(params, h_sq, gamma_0, rho) / sigma0_sq(params, h_sq, rho)


def conditional_outage(params, h_sq, rho, lambda_g, gamma_0):
    """Outage probability given |h|^2 and rho, averaged over the exponential g.

    For feasible rho (F(rho) > 0) this is 1 - exp(-gamma_0*sigma_0^2/(F*lambda_g));
    for infeasible rho (including rho = 1) the outage is certain and the value
    is exactly 1.
    """
    f = f_of_rho(params, h_sq, gamma_0, rho)
    s0 = sigma0_sq(params, h_sq, rho)
    feasible = f > 0.0
    safe_f = np.where(feasible, f, 1.0)
    p = 1.0 - np.exp(-gamma_0 * s0 / (safe_f * lambda_g))
    out = np.where(feasible, p, 1.0)
    return float(out) if np.ndim(out) == 0 else out


def full_csi_coefficients(params, h_sq, g_sq) -> FullCsiCoefficients:
    """Coefficients of the full-CSI stationarity quadratic.

    a1 = sd^2 - g^2 sp^2; c1 = sd^2 + sp^2 sd^2/(P_s h^2 + sr^2); b1 = -2*c1.
    """
    ps_h = params.p_s * h_sq + params.sigma_r_sq
    c1 = params.sigma_d_sq * (1.0 + params.sigma_p_sq / ps_h)
    a1 = params.sigma_d_sq - g_sq * params.sigma_p_sq
    return FullCsiCoefficients(a1=a1, b1=-2.0 * c1, c1=c1)


def partial_csi_coefficients(params, h_sq, gamma_0) -> PartialCsiCoefficients:
    """Coefficients of the partial-CSI derivative a2 - c2/(rho - b2)^2.

    a2 and c2 are positive whenever P_s*|h|^2 > gamma_0*sigma_r^2; b2 > 1 always.
    """
    ps_h = params.p_s * h_sq + params.sigma_r_sq
    a2 = (params.p_s * h_sq - gamma_0 * params.sigma_r_sq) / params.sigma_d_sq
    b2 = 1.0 + params.sigma_p_sq / ps_h
    c2 = b2 * (a2 * params.sigma_p_sq / ps_h + gamma_0 * params.sigma_p_sq / params.sigma_d_sq)
    return PartialCsiCoefficients(a2=a2, b2=b2, c2=c2)
