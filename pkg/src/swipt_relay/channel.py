"""Rayleigh-fading channel power gains with reproducible PRNG substreams.

Both hops experience Rayleigh fading, so the power gains |h|^2 and |g|^2 are
exponential with means lambda_h and lambda_g. Gains are drawn by inverse CDF,
x = -lambda * ln(U) with U uniform on (0, 1], so the sample stream is an exact
deterministic function of the underlying uniform stream.

The generator is pinned to numpy's PCG64 seeded through SeedSequence. This is
part of the reproducibility contract, not an implementation detail: the same
(seed, substream indices) must give bit-identical draws on any platform, and
parallel workers get independence only through substream partitioning, never
by sharing a stream.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "FadingParams",
    "ChannelRealization",
    "make_rng",
    "substream",
    "sample_gains",
    "sample_channels",
    "sample_channel",
]


@dataclass(frozen=True)
class FadingParams:
    lambda_h: float  # mean of |h|^2 (source -> relay)
    lambda_g: float  # mean of |g|^2 (relay -> destination)

    def __post_init__(self):
        if not self.lambda_h > 0:
            raise ValueError(f"lambda_h must be positive, got {self.lambda_h!r}")
        if not self.lambda_g > 0:
            raise ValueError(f"lambda_g must be positive, got {self.lambda_g!r}")


@dataclass(frozen=True)
class ChannelRealization:
    h_sq: float  # |h|^2, dimensionless power gain
    g_sq: float  # |g|^2, dimensionless power gain


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic PCG64 stream for a 64-bit seed (seed 0 is fine)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def substream(parent_seed: int, *indices: int) -> np.random.Generator:
    """Independent stream for a (parent_seed, index path) pair.

    SeedSequence mixes the spawn key into the pool, so distinct index paths
    give statistically independent streams while staying deterministic.
    """
    ss = np.random.SeedSequence(parent_seed, spawn_key=tuple(int(i) for i in indices))
    return np.random.Generator(np.random.PCG64(ss))


def sample_gains(rng: np.random.Generator, lam: float, n: int) -> np.ndarray:
    """Draw n exponential power gains with mean lam by inverse CDF."""
    u = rng.random(n)  # in [0, 1); 1-u is in (0, 1], so log never sees 0
    return -lam * np.log1p(-u)


def sample_channels(rng, fading: FadingParams, n: int):
    """Draw n i.i.d. (|h|^2, |g|^2) pairs. The h block is always drawn first."""
    h_sq = sample_gains(rng, fading.lambda_h, n)
    g_sq = sample_gains(rng, fading.lambda_g, n)
    return h_sq, g_sq


def sample_channel(rng, fading: FadingParams) -> ChannelRealization:
    h_sq, g_sq = sample_channels(rng, fading, 1)
    return ChannelRealization(h_sq=float(h_sq[0]), g_sq=float(g_sq[0]))
