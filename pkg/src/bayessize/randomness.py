"""Seeded uniform streams and the deviate transforms built on them.

Determinism contract: a stream is fully identified by ``(seed,
stream_id)``, and every deviate is a fixed transform of uniforms drawn in
a fixed order.  Two runs with the same keys therefore produce bitwise
identical draws regardless of platform, process count, or call site.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "SeededGenerator",
    "normal_deviate",
    "exponential_deviate",
    "bernoulli_deviate",
    "poisson_deviate",
]

# exp(-mean) underflows past this point and the inversion loop below
# would never terminate.
_POISSON_MEAN_LIMIT = 700.0


class SeededGenerator:
    """Uniform(0, 1) stream keyed by a seed and a stream id.

    Distinct ``(seed, stream_id)`` pairs give statistically independent
    streams; equal pairs give identical streams.  Replicate ``j`` of a
    simulation conventionally uses ``stream_id=j``.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        if not isinstance(seed, int) or isinstance(seed, bool) or not 0 <= seed < 2**64:
            raise DomainError(f"seed must be an integer in [0, 2^64), got {seed!r}")
        if not isinstance(stream_id, int) or isinstance(stream_id, bool) or stream_id < 0:
            raise DomainError(f"stream_id must be a nonnegative integer, got {stream_id!r}")
        self.seed = seed
        self.stream_id = stream_id
        self._rng = np.random.default_rng([seed, stream_id])

    def uniform(self) -> float:
        """One draw from Uniform[0, 1)."""
        return float(self._rng.random())

    def uniforms(self, count: int) -> np.ndarray:
        """``count`` draws from Uniform[0, 1), in stream order."""
        if count < 0:
            raise DomainError(f"count must be nonnegative, got {count!r}")
        return self._rng.random(count)


def normal_deviate(rng) -> float:
    """Standard normal draw via the polar form of two uniforms.

    Consumes exactly two uniforms; the sine partner of the Box-Muller
    pair is discarded to keep the per-draw uniform count fixed.
    """
    u1 = rng.uniform()
    u2 = rng.uniform()
    r = math.sqrt(-2.0 * math.log1p(-u1))
    return r * math.cos(2.0 * math.pi * u2)


def exponential_deviate(rng, rate: float) -> float:
    """Exponential draw by inversion: ``-log(1 - u) / rate``."""
    if not (isinstance(rate, (int, float)) and math.isfinite(rate)) or rate <= 0.0:
        raise DomainError(f"rate must be a positive finite number, got {rate!r}")
    u = rng.uniform()
    return -math.log1p(-u) / rate


def bernoulli_deviate(rng, p: float) -> int:
    """Bernoulli draw: 1 when the uniform falls below ``p``."""
    if not (isinstance(p, (int, float)) and math.isfinite(p)) or not 0.0 <= p <= 1.0:
        raise DomainError(f"success probability must lie in [0, 1], got {p!r}")
    return 1 if rng.uniform() < p else 0


def poisson_deviate(rng, mean: float) -> int:
    """Poisson draw by chop-down inversion of the CDF.

    Walks the probability mass from zero upward, so the cost grows with
    the mean; means large enough to underflow ``exp(-mean)`` are refused.
    """
    if not (isinstance(mean, (int, float)) and math.isfinite(mean)) or mean <= 0.0:
        raise DomainError(f"mean must be a positive finite number, got {mean!r}")
    if mean >= _POISSON_MEAN_LIMIT:
        raise DomainError(
            f"mean {mean!r} exceeds the inversion range ({_POISSON_MEAN_LIMIT})"
        )
    u = rng.uniform()
    k = 0
    pk = math.exp(-mean)
    acc = pk
    while u >= acc:
        k += 1
        pk *= mean / k
        acc += pk
        if k > 100_000_000:  # unreachable for admissible means; guards fp pathologies
            raise DomainError(f"Poisson inversion failed to terminate for mean {mean!r}")
    return k
