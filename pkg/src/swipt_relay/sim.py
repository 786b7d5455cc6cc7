"""Monte Carlo and semi-analytic outage estimation, gain metrics, sweeps.

Determinism contract: every estimate is a pure function of (seed, n) plus the
static parameters. Realizations are partitioned into fixed-size batches and
batch b always draws from substream(seed, *key, b), so the result is
bit-identical no matter how many workers execute the batches. Policies
compared at the same operating point share the same channel draws (common
random numbers), which sharpens gain and dominance comparisons.
"""
from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import FadingParams, sample_channels, sample_gains, substream
from .link import conditional_outage
from .params import SystemParams, dbm_to_linear
from .policy import Fixed, FullCSI, PartialCSI, Policy, decide_rho, policy_name
from .link import snr

__all__ = [
    "BATCH_SIZE",
    "OutageEstimate",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "GainRow",
    "outage_mc",
    "outage_point",
    "outage_semi_analytic",
    "gain_eta",
    "horizontal_gain_db",
    "run_sweep",
    "gains_from_sweep",
]

# Fixed batch granularity; part of the determinism contract (changing it
# changes which substream produces which draw).
BATCH_SIZE = 1 << 19


@dataclass(frozen=True)
class OutageEstimate:
    p_out: float        # estimated outage probability
    std_err: float      # standard error of p_out
    n: int              # realization count
    mean_rho: float     # average rho over transmitting realizations (nan if none)
    harvest_only_fraction: float  # fraction of realizations with rho == 1


@dataclass(frozen=True)
class SweepSpec:
    variable: str                 # one of: p_s_dbm, lambda_g, lambda_h
    values: tuple                 # strictly increasing, nonempty
    params: SystemParams
    fading: FadingParams
    policies: tuple               # Policy instances
    n: int                        # realizations per (value, policy)
    seed: int

    def __post_init__(self):
        if self.variable not in ("p_s_dbm", "lambda_g", "lambda_h"):
            raise ValueError(f"unknown sweep variable {self.variable!r}")
        if len(self.values) == 0:
            raise ValueError("sweep values must be nonempty")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if len(self.policies) == 0:
            raise ValueError("at least one policy required")


@dataclass(frozen=True)
class SweepRow:
    sweep_value: float
    policy: Policy
    estimate: OutageEstimate


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    provenance: dict


@dataclass(frozen=True)
class GainRow:
    """Log-ratio gains vs the Fixed(0.4) baseline at one sweep value,
    with first-order standard errors (independence approximation, which is
    conservative under common random numbers)."""
    sweep_value: float
    eta_full: float
    eta_par: float
    eta_06: float
    eta_08: float
    eta_full_se: float
    eta_par_se: float
    eta_06_se: float
    eta_08_se: float


def _batch_sizes(n: int):
    full, rem = divmod(n, BATCH_SIZE)
    sizes = [BATCH_SIZE] * full
    if rem:
        sizes.append(rem)
    return sizes


def _mc_batch(args):
    """One batch of channel draws evaluated under every policy (CRN)."""
    params, fading, policies, gamma_0, seed, key, batch_idx, size = args
    rng = substream(seed, *key, batch_idx)
    h_sq, g_sq = sample_channels(rng, fading, size)
    stats = []
    for pol in policies:
        rho = decide_rho(pol, params, h_sq, g_sq, gamma_0)
        gamma = snr(params, h_sq, g_sq, rho)
        outage = gamma < gamma_0
        transmitting = rho < 1.0
        stats.append((
            int(np.count_nonzero(outage)),
            float(np.sum(np.where(transmitting, rho, 0.0))),
            int(np.count_nonzero(transmitting)),
        ))
    return stats


def _sa_batch(args):
    """One batch of h-only draws with the analytic g-average per draw."""
    params, fading, policy, gamma_0, seed, key, batch_idx, size = args
    rng = substream(seed, *key, batch_idx)
    h_sq = sample_gains(rng, fading.lambda_h, size)
    rho = decide_rho(policy, params, h_sq, None, gamma_0)
    p = np.asarray(conditional_outage(params, h_sq, rho, fading.lambda_g, gamma_0))
    p = np.broadcast_to(p, h_sq.shape)
    transmitting = np.broadcast_to(np.asarray(rho) < 1.0, h_sq.shape)
    rho_arr = np.broadcast_to(np.asarray(rho, dtype=float), h_sq.shape)
    return (
        float(p.sum()),
        float(np.square(p).sum()),
        float(np.sum(np.where(transmitting, rho_arr, 0.0))),
        int(np.count_nonzero(transmitting)),
    )


def _map_batches(fn, arg_list, workers):
    if workers <= 1:
        return [fn(a) for a in arg_list]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        # ex.map preserves submission order, so the merge below is
        # independent of scheduling.
        return list(ex.map(fn, arg_list, chunksize=1))


def outage_point(params, fading, policies, gamma_0, n, seed, key=(), workers=1):
    """Monte Carlo outage for several policies on shared channel draws.

    Returns one OutageEstimate per policy, in order.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sizes = _batch_sizes(n)
    args = [
        (params, fading, tuple(policies), gamma_0, seed, tuple(key), b, size)
        for b, size in enumerate(sizes)
    ]
    per_batch = _map_batches(_mc_batch, args, workers)
    estimates = []
    for j in range(len(policies)):
        n_out = sum(batch[j][0] for batch in per_batch)
        rho_sum = math.fsum(batch[j][1] for batch in per_batch)
        n_tx = sum(batch[j][2] for batch in per_batch)
        p = n_out / n
        estimates.append(OutageEstimate(
            p_out=p,
            std_err=math.sqrt(p * (1.0 - p) / n),
            n=n,
            mean_rho=(rho_sum / n_tx) if n_tx else float("nan"),
            harvest_only_fraction=(n - n_tx) / n,
        ))
    return estimates


def outage_mc(params, fading, policy, gamma_0, n, seed, key=(), workers=1) -> OutageEstimate:
    """Monte Carlo outage probability for a single policy."""
    return outage_point(params, fading, (policy,), gamma_0, n, seed, key, workers)[0]


def outage_semi_analytic(params, fading, policy, gamma_0, n_h, seed, key=(), workers=1) -> OutageEstimate:
    """Outage via sampled h and the closed-form expectation over g.

    Only valid for policies whose rho does not depend on g (PartialCSI and
    Fixed); the per-draw conditional outage is analytic, so the estimator
    averages [0,1]-valued quantities and its standard error comes from their
    sample variance, not a Bernoulli model.
    """
    if isinstance(policy, FullCSI):
        raise ValueError("semi-analytic estimator requires a g-independent policy")
    if n_h < 1:
        raise ValueError(f"n_h must be >= 1, got {n_h}")
    sizes = _batch_sizes(n_h)
    args = [
        (params, fading, policy, gamma_0, seed, tuple(key), b, size)
        for b, size in enumerate(sizes)
    ]
    per_batch = _map_batches(_sa_batch, args, workers)
    s1 = math.fsum(b[0] for b in per_batch)
    s2 = math.fsum(b[1] for b in per_batch)
    rho_sum = math.fsum(b[2] for b in per_batch)
    n_tx = sum(b[3] for b in per_batch)
    p = s1 / n_h
    var = (s2 - n_h * p * p) / (n_h - 1) if n_h > 1 else 0.0
    var = max(var, 0.0)  # clip tiny negative rounding residue
    return OutageEstimate(
        p_out=p,
        std_err=math.sqrt(var / n_h),
        n=n_h,
        mean_rho=(rho_sum / n_tx) if n_tx else float("nan"),
        harvest_only_fraction=(n_h - n_tx) / n_h,
    )


def gain_eta(p_out_x: float, p_out_ref: float) -> float:
    """Log-ratio performance gain -ln(p_x / p_ref) vs a baseline policy."""
    if not (0.0 < p_out_x < 1.0 and 0.0 < p_out_ref < 1.0):
        raise ValueError(
            "insufficient resolution: outage estimates must lie strictly in (0, 1); "
            f"got {p_out_x!r} and {p_out_ref!r} (increase n)"
        )
    return -math.log(p_out_x / p_out_ref)


def horizontal_gain_db(curve_dyn, curve_base, at_p_s_dbm: float) -> float:
    """Horizontal (dB) gap between two outage-vs-P_s curves.

    Reads the dynamic curve's outage at `at_p_s_dbm` (log-linear interpolation)
    and returns how many extra dB of transmit power the base curve needs to
    reach the same outage. Positive means the dynamic policy saves power.
    """
    def _unpack(curve, name):
        xs = np.asarray([float(x) for x, _ in curve])
        ps = np.asarray([float(p) for _, p in curve])
        if np.any(np.diff(xs) <= 0):
            raise ValueError(f"{name} curve must have strictly increasing P_s")
        if np.any(np.diff(ps) >= 0):
            raise ValueError(f"{name} curve must be strictly decreasing in P_s")
        if np.any(ps <= 0):
            raise ValueError(f"{name} curve has non-positive outage values")
        return xs, np.log(ps)

    xs_d, logp_d = _unpack(curve_dyn, "dynamic")
    xs_b, logp_b = _unpack(curve_base, "base")
    if not xs_d[0] <= at_p_s_dbm <= xs_d[-1]:
        raise ValueError(f"at_p_s_dbm={at_p_s_dbm} outside dynamic curve domain")
    target = float(np.interp(at_p_s_dbm, xs_d, logp_d))
    if not logp_b[-1] <= target <= logp_b[0]:
        raise ValueError("extrapolation refused: target outage outside base curve range")
    # logp_b is decreasing; flip for np.interp's increasing-x requirement
    p_s_prime = float(np.interp(target, logp_b[::-1], xs_b[::-1]))
    return p_s_prime - at_p_s_dbm


def _point_config(spec: SweepSpec, value):
    params, fading = spec.params, spec.fading
    if spec.variable == "p_s_dbm":
        params = dataclasses.replace(params, p_s=dbm_to_linear(float(value)))
    elif spec.variable == "lambda_h":
        fading = dataclasses.replace(fading, lambda_h=float(value))
    else:
        fading = dataclasses.replace(fading, lambda_g=float(value))
    return params, fading


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Evaluate every (sweep value, policy) pair; deterministic in spec.seed.

    Each sweep point owns the substream key (point_index,); within a point all
    policies share channel draws.
    """
    rows = []
    for i, value in enumerate(spec.values):
        params, fading = _point_config(spec, value)
        estimates = outage_point(
            params, fading, spec.policies, params.gamma_0,
            spec.n, spec.seed, key=(i,), workers=workers,
        )
        for pol, est in zip(spec.policies, estimates):
            rows.append(SweepRow(sweep_value=float(value), policy=pol, estimate=est))
    provenance = {
        "seed": spec.seed,
        "n": spec.n,
        "variable": spec.variable,
        "values": list(spec.values),
        "policies": [policy_name(p) for p in spec.policies],
        "params": dataclasses.asdict(spec.params),
        "fading": dataclasses.asdict(spec.fading),
    }
    return SweepResult(rows=tuple(rows), provenance=provenance)


def _eta_se(est_x: OutageEstimate, est_ref: OutageEstimate) -> float:
    return math.sqrt(
        (est_x.std_err / est_x.p_out) ** 2 + (est_ref.std_err / est_ref.p_out) ** 2
    )


def gains_from_sweep(result: SweepResult):
    """GainRow per sweep value, relative to the Fixed(0.4) baseline.

    Requires the sweep to include full_csi, partial_csi and fixed 0.4/0.6/0.8.
    """
    by_value = {}
    for row in result.rows:
        by_value.setdefault(row.sweep_value, {})[policy_name(row.policy)] = row.estimate
    gains = []
    for value in sorted(by_value):
        ests = by_value[value]
        needed = ("fixed:0.4", "full_csi", "partial_csi", "fixed:0.6", "fixed:0.8")
        missing = [k for k in needed if k not in ests]
        if missing:
            raise ValueError(f"gain computation needs policies {missing} at value {value}")
        ref = ests["fixed:0.4"]
        def eta(name):
            return gain_eta(ests[name].p_out, ref.p_out), _eta_se(ests[name], ref)
        e_full, se_full = eta("full_csi")
        e_par, se_par = eta("partial_csi")
        e_06, se_06 = eta("fixed:0.6")
        e_08, se_08 = eta("fixed:0.8")
        gains.append(GainRow(
            sweep_value=value,
            eta_full=e_full, eta_par=e_par, eta_06=e_06, eta_08=e_08,
            eta_full_se=se_full, eta_par_se=se_par, eta_06_se=se_06, eta_08_se=se_08,
        ))
    return gains
