"""Power-splitting policies and the grid-search oracles that verify them.

Three policies map a channel realization to a splitting ratio rho:

* Fixed(rho0): ignores the channel.
* FullCSI: knows |h|^2 and |g|^2, picks the rho maximizing the instantaneous
  SNR (closed form, root of a quadratic).
* PartialCSI: knows |h|^2 and only the mean of |g|^2, picks the rho minimizing
  the g-averaged outage; below the gain threshold it sets rho = 1 and only
  harvests. The maximizer does not depend on lambda_g, so lambda_g never
  appears in the decision.

The closed forms assume unit harvesting efficiency; the coefficient algebra
does not carry over to epsilon < 1, so both dynamic policies refuse such
params rather than silently returning a wrong optimum.

The oracle_grid_* functions are deliberately brute force. They are the
independent verification route for the closed forms and must stay that way.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .link import (
    full_csi_coefficients,
    h_threshold,
    partial_csi_coefficients,
    rho_max,
    snr,
    w_ratio,
)

__all__ = [
    "Fixed",
    "FullCSI",
    "PartialCSI",
    "Policy",
    "PolicyDecision",
    "parse_policy",
    "policy_name",
    "full_csi_rho",
    "partial_csi_rho",
    "partial_csi_rho_array",
    "fixed_rho",
    "decide_rho",
    "oracle_grid_full",
    "oracle_grid_partial",
]


@dataclass(frozen=True)
class Fixed:
    rho0: float

    def __post_init__(self):
        if not 0.0 < self.rho0 < 1.0:
            raise ValueError(f"fixed rho0 must be strictly inside (0, 1), got {self.rho0!r}")


@dataclass(frozen=True)
class FullCSI:
    pass


@dataclass(frozen=True)
class PartialCSI:
    pass


Policy = Union[Fixed, FullCSI, PartialCSI]


@dataclass(frozen=True)
class PolicyDecision:
    rho: float
    transmitting: bool  # false iff rho == 1 (harvest-only block)


def parse_policy(name: str) -> Policy:
    """Parse a policy spec string: 'full_csi', 'partial_csi', or 'fixed:<rho0>'."""
    if name == "full_csi":
        return FullCSI()
    if name == "partial_csi":
        return PartialCSI()
    if name.startswith("fixed:"):
        try:
            rho0 = float(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad fixed policy spec: {name!r}") from None
        return Fixed(rho0)
    raise ValueError(
        f"unknown policy {name!r}; valid: full_csi, partial_csi, fixed:<rho0>"
    )


def policy_name(policy: Policy) -> str:
    if isinstance(policy, FullCSI):
        return "full_csi"
    if isinstance(policy, PartialCSI):
        return "partial_csi"
    return f"fixed:{policy.rho0:g}"


def _require_unit_epsilon(params):
    if params.epsilon != 1.0:
        raise ValueError(
            "closed-form policies require epsilon == 1; "
            f"got epsilon={params.epsilon!r}"
        )


def full_csi_rho(params, h_sq, g_sq):
    """SNR-maximizing rho, closed form. Broadcasts over arrays.

    The stationarity quadratic a1*rho^2 - 2*c1*rho + c1 = 0 is solved in the
    rationalized form rho* = c1 / (c1 + sqrt(c1*(c1 - a1))), which is the
    in-(0,1) root for any sign of a1 and stays exact through a1 -> 0 (where
    the two-branch textbook form needs a special case and loses digits).
    """
    _require_unit_epsilon(params)
    co = full_csi_coefficients(params, h_sq, g_sq)
    return co.c1 / (co.c1 + np.sqrt(co.c1 * (co.c1 - co.a1)))


def partial_csi_rho_array(params, h_sq, gamma_0) -> np.ndarray:
    """Vectorized partial-CSI rule: rho = b2 - sqrt(c2/a2), or 1 below threshold."""
    _require_unit_epsilon(params)
    h_sq = np.asarray(h_sq, dtype=float)
    h0 = h_threshold(params, gamma_0)
    co = partial_csi_coefficients(params, h_sq, gamma_0)
    feasible = h_sq > h0
    # a2 > 0 whenever feasible; mask the rest before the sqrt
    a2 = np.where(feasible, co.a2, 1.0)
    c2 = np.where(feasible, co.c2, 0.0)
    rho = co.b2 - np.sqrt(c2 / a2)
    return np.where(feasible, rho, 1.0)


def partial_csi_rho(params, h_sq, gamma_0) -> PolicyDecision:
    """Outage-minimizing rho given |h|^2 only; rho = 1 (no transmission) if
    the channel is below the feasibility threshold H0 (boundary included)."""
    rho = float(partial_csi_rho_array(params, h_sq, gamma_0))
    return PolicyDecision(rho=rho, transmitting=rho < 1.0)


def fixed_rho(policy: Fixed) -> PolicyDecision:
    return PolicyDecision(rho=policy.rho0, transmitting=True)


def decide_rho(policy: Policy, params, h_sq, g_sq, gamma_0):
    """Per-realization rho for any policy; broadcasts over channel arrays."""
    if isinstance(policy, Fixed):
        return np.broadcast_to(policy.rho0, np.shape(h_sq)).astype(float) \
            if np.ndim(h_sq) else policy.rho0
    if isinstance(policy, FullCSI):
        return full_csi_rho(params, h_sq, g_sq)
    if isinstance(policy, PartialCSI):
        return partial_csi_rho_array(params, h_sq, gamma_0)
    raise TypeError(f"unknown policy type: {policy!r}")


def _rho_grid(step: float) -> np.ndarray:
    if not 0.0 < step <= 1e-3:
        raise ValueError(f"grid step must be in (0, 1e-3], got {step!r}")
    m = round(1.0 / step) - 1
    return np.linspace(step, 1.0 - step, m)


def oracle_grid_full(params, h_sq, g_sq, step: float = 1e-4) -> float:
    """Brute-force argmax of snr() over a uniform rho grid (ties to smaller rho)."""
    grid = _rho_grid(step)
    vals = snr(params, h_sq, g_sq, grid)
    return float(grid[int(np.argmax(vals))])


def oracle_grid_partial(params, h_sq, gamma_0, step: float = 1e-4) -> PolicyDecision:
    """Brute-force argmax of W(rho) over the feasible part of the grid.

    Empty feasible set (h below threshold, or no grid point under rho_max)
    means certain outage, so the decision is harvest-only (rho = 1).
    """
    grid = _rho_grid(step)
    if h_sq <= h_threshold(params, gamma_0):
        return PolicyDecision(rho=1.0, transmitting=False)
    r_max = rho_max(params, h_sq, gamma_0)
    mask = grid < r_max
    if not np.any(mask):
        return PolicyDecision(rho=1.0, transmitting=False)
    vals = np.where(mask, w_ratio(params, h_sq, gamma_0, grid), -np.inf)
    return PolicyDecision(rho=float(grid[int(np.argmax(vals))]), transmitting=True)
