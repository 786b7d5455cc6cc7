"""System-level parameters: transmit power, noise variances, rate threshold.

Internally every power and variance is stored in linear milliwatts; dBm
appears only at the config/CLI boundary. The outage SNR threshold gamma_0
is always recomputed from the rate, never stored, so it cannot drift out
of sync.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


class ConfigError(ValueError):
    """A config value is missing, malformed, or out of range."""


def dbm_to_linear(x_dbm: float) -> float:
    """Convert dBm to linear milliwatts: 10^(x/10)."""
    if not math.isfinite(x_dbm):
        raise ConfigError(f"non-finite dBm value: {x_dbm!r}")
    return 10.0 ** (x_dbm / 10.0)


def linear_to_dbm(x: float) -> float:
    """Convert linear milliwatts to dBm. Requires x > 0."""
    if not (x > 0 and math.isfinite(x)):
        raise ConfigError(f"dBm undefined for non-positive power: {x!r}")
    return 10.0 * math.log10(x)


def snr_threshold(rate: float) -> float:
    """Outage SNR threshold gamma_0 = 2^R - 1 for a fixed rate R (bits/sec/Hz)."""
    if not rate > 0:
        raise ConfigError(f"rate must be positive, got {rate!r}")
    return 2.0 ** rate - 1.0


@dataclass(frozen=True)
class SystemParams:
    p_s: float            # source transmit power, mW
    sigma_r_sq: float     # antenna noise variance at the relay, mW
    sigma_p_sq: float     # processing noise variance at the relay, mW
    sigma_d_sq: float     # noise variance at the destination, mW
    rate: float           # fixed transmission rate, bits/sec/Hz
    epsilon: float = 1.0  # energy conversion efficiency, in (0, 1]
    block_duration: float = 1.0  # block length T in seconds; cancels out of P_r

    def __post_init__(self):
        for name in ("p_s", "sigma_r_sq", "sigma_p_sq", "sigma_d_sq"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(f"{name} must be a positive finite power, got {v!r}")
        if not 0.0 < self.epsilon <= 1.0:
            raise ConfigError(f"epsilon out of range (0, 1]: {self.epsilon!r}")
        if not self.rate > 0:
            raise ConfigError(f"rate must be positive, got {self.rate!r}")
        if not self.block_duration > 0:
            raise ConfigError(f"block_duration must be positive, got {self.block_duration!r}")

    @property
    def gamma_0(self) -> float:
        """SNR threshold 2^rate - 1, recomputed on every access."""
        return snr_threshold(self.rate)


# Config keys carrying dBm values, mapped to their linear-mW field.
_DBM_KEYS = {
    "p_s_dbm": "p_s",
    "sigma_r_sq_dbm": "sigma_r_sq",
    "sigma_p_sq_dbm": "sigma_p_sq",
    "sigma_d_sq_dbm": "sigma_d_sq",
}


def validate(raw) -> SystemParams:
    """Build a SystemParams from a flat config mapping.

    Expected keys: p_s_dbm, sigma_r_sq_dbm, sigma_p_sq_dbm, sigma_d_sq_dbm,
    rate_bps_hz, and optionally epsilon (default 1.0) and block_duration_s
    (default 1.0). Passing an already-validated SystemParams is a no-op.
    """
    if isinstance(raw, SystemParams):
        return raw
    fields = {}
    for key, field in _DBM_KEYS.items():
        if key not in raw:
            raise ConfigError(f"missing {key}")
        v = raw[key]
        if not isinstance(v, (int, float)):
            raise ConfigError(f"{key} must be a number, got {v!r}")
        fields[field] = dbm_to_linear(float(v))
    if "rate_bps_hz" not in raw:
        raise ConfigError("missing rate_bps_hz")
    fields["rate"] = float(raw["rate_bps_hz"])
    fields["epsilon"] = float(raw.get("epsilon", 1.0))
    fields["block_duration"] = float(raw.get("block_duration_s", 1.0))
    return SystemParams(**fields)
