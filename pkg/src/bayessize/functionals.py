"""Scalar summaries of a posterior, as small value objects.

A functional pins down *what* is measured on each realised posterior
(variance, a quantile, an interval length, a highest-density endpoint,
and so on); the simulation and oracle layers average it over repeated
sampling.  Keeping them as frozen dataclasses makes run configurations
hashable and printable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError


def _check_open_unit(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or not 0.0 < x < 1.0:
        raise DomainError(f"{name} must lie strictly inside (0, 1), got {x!r}")
    return x


@dataclass(frozen=True)
class PosteriorVariance:
    """The posterior variance."""


@dataclass(frozen=True)
class PosteriorQuantile:
    """The posterior quantile at probability ``alpha``."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_open_unit("alpha", self.alpha))


@dataclass(frozen=True)
class CredibleLength:
    """Length of the central credible interval with tail mass ``alpha``.

    Measures ``quantile(1 - alpha/2) - quantile(alpha/2)``.
    """

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_open_unit("alpha", self.alpha))


@dataclass(frozen=True)
class HpdLower:
    """Lower endpoint of the highest-density interval at ``level``."""

    level: float

    def __post_init__(self):
        object.__setattr__(self, "level", _check_open_unit("level", self.level))


@dataclass(frozen=True)
class HpdUpper:
    """Upper endpoint of the highest-density interval at ``level``."""

    level: float

    def __post_init__(self):
        object.__setattr__(self, "level", _check_open_unit("level", self.level))


@dataclass(frozen=True)
class HpdWidth:
    """Width of the highest-density interval at ``level``."""

    level: float

    def __post_init__(self):
        object.__setattr__(self, "level", _check_open_unit("level", self.level))


@dataclass(frozen=True)
class CenteredIntervalMass:
    """Posterior mass of the interval of ``length`` centred at the mean."""

    length: float

    def __post_init__(self):
        length = float(self.length)
        if not math.isfinite(length) or length <= 0.0:
            raise DomainError(f"length must be a positive finite number, got {length!r}")
        object.__setattr__(self, "length", length)


@dataclass(frozen=True)
class TailMassAbove:
    """Posterior mass above the fixed point ``theta1``."""

    theta1: float

    def __post_init__(self):
        theta1 = float(self.theta1)
        if not math.isfinite(theta1):
            raise DomainError(f"theta1 must be finite, got {theta1!r}")
        object.__setattr__(self, "theta1", theta1)


Functional = Union[
    PosteriorVariance,
    PosteriorQuantile,
    CredibleLength,
    HpdLower,
    HpdUpper,
    HpdWidth,
    CenteredIntervalMass,
    TailMassAbove,
]


def evaluate(functional: Functional, post) -> float:
    """Value of ``functional`` on one realised posterior."""
    if isinstance(functional, PosteriorVariance):
        return post.variance()
    if isinstance(functional, PosteriorQuantile):
        return post.quantile(functional.alpha)
    if isinstance(functional, CredibleLength):
        half = 0.5 * functional.alpha
        return post.quantile(1.0 - half) - post.quantile(half)
    if isinstance(functional, HpdLower):
        return post.hpd(functional.level).lo
    if isinstance(functional, HpdUpper):
        return post.hpd(functional.level).hi
    if isinstance(functional, HpdWidth):
        interval = post.hpd(functional.level)
        return interval.hi - interval.lo
    if isinstance(functional, CenteredIntervalMass):
        mid = post.mean()
        half = 0.5 * functional.length
        return post.interval_mass(mid - half, mid + half)
    if isinstance(functional, TailMassAbove):
        return post.prob_above(functional.theta1)
    raise DomainError(f"unknown functional {functional!r}")
