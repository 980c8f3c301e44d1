"""Likelihood families, priors, sufficient statistics and posteriors.

Four one-parameter observation models are supported: normal with known
variance, Poisson, Bernoulli, and exponential parameterised by its rate.
The first three pair with their conjugate priors and yield closed-form
posterior families; the exponential-rate model pairs with a beta prior
restricted to rates in (0, 1] and is represented on a dense grid.

Posterior objects are immutable once constructed and safe to share
across threads.  All numeric posterior summaries (quantiles, interval
masses, highest-density regions) resolve to 1e-8 in probability or
better unless documented otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (
    AccuracyError,
    ConfigurationError,
    CriterionUnsatisfiableError,
    DomainError,
    UnsupportedShapeError,
)
from .quadrature import cumulative_table
from .randomness import bernoulli_deviate, normal_deviate, poisson_deviate
from .specfun import ln_gamma, std_normal_cdf, std_normal_quantile

__all__ = [
    "NormalKnownVariance",
    "Poisson",
    "Bernoulli",
    "ExponentialRate",
    "LikelihoodFamily",
    "NormalPrior",
    "GammaPrior",
    "BetaPrior",
    "SufficientStat",
    "NormalPosterior",
    "GammaPosterior",
    "BetaPosterior",
    "GridPosterior",
    "HpdInterval",
    "GRID_NODES",
    "param_bounds",
    "in_domain",
    "fisher_info",
    "inf_weighted_info",
    "sample_suffstat",
    "posterior",
    "post_mean",
    "post_variance",
    "post_quantile",
    "post_interval_mass",
    "post_hpd",
    "post_prob_above",
]

GRID_NODES = 4096


def _positive(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {x!r}")
    return x


def _finite(name: str, x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


# ---------------------------------------------------------------------------
# Likelihood families


@dataclass(frozen=True)
class NormalKnownVariance:
    """Normal observations with known variance ``sigma2``; mean unknown."""

    sigma2: float

    def __post_init__(self):
        object.__setattr__(self, "sigma2", _positive("sigma2", self.sigma2))


@dataclass(frozen=True)
class Poisson:
    """Poisson counts with unknown positive mean."""


@dataclass(frozen=True)
class Bernoulli:
    """Bernoulli trials with unknown success probability in (0, 1)."""


@dataclass(frozen=True)
class ExponentialRate:
    """Exponential waiting times with unknown rate, density ``r exp(-r x)``."""


LikelihoodFamily = Union[NormalKnownVariance, Poisson, Bernoulli, ExponentialRate]


def param_bounds(family: LikelihoodFamily) -> tuple[float, float]:
    """Open interval of admissible parameter values for ``family``."""
    if isinstance(family, NormalKnownVariance):
        return (-math.inf, math.inf)
    if isinstance(family, (Poisson, ExponentialRate)):
        return (0.0, math.inf)
    if isinstance(family, Bernoulli):
        return (0.0, 1.0)
    raise ConfigurationError(f"unknown likelihood family {family!r}")


def in_domain(family: LikelihoodFamily, theta: float) -> bool:
    """Whether ``theta`` lies strictly inside the family's parameter domain."""
    if not isinstance(theta, (int, float)) or not math.isfinite(theta):
        return False
    lo, hi = param_bounds(family)
    return lo < theta < hi


def fisher_info(family: LikelihoodFamily, theta: float) -> float:
    """Per-observation Fisher information at ``theta``."""
    if not in_domain(family, theta):
        raise DomainError(f"theta {theta!r} lies outside the domain of {family!r}")
    if isinstance(family, NormalKnownVariance):
        return 1.0 / family.sigma2
    if isinstance(family, Poisson):
        return 1.0 / theta
    if isinstance(family, Bernoulli):
        return 1.0 / (theta * (1.0 - theta))
    return 1.0 / (theta * theta)


def _info_values(family: LikelihoodFamily, theta: np.ndarray) -> np.ndarray:
    if isinstance(family, NormalKnownVariance):
        return np.full_like(theta, 1.0 / family.sigma2)
    if isinstance(family, Poisson):
        return 1.0 / theta
    if isinstance(family, Bernoulli):
        return 1.0 / (theta * (1.0 - theta))
    return 1.0 / (theta * theta)


def _golden_min(f: Callable[[float], float], a: float, b: float) -> tuple[float, float]:
    inv_phi = 0.5 * (math.sqrt(5.0) - 1.0)
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(120):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = f(x2)
        if b - a <= 1e-14 * (1.0 + abs(a) + abs(b)):
            break
    return (x1, f1) if f1 <= f2 else (x2, f2)


def inf_weighted_info(
    family: LikelihoodFamily,
    lo: float,
    hi: float,
    theta1: float | None = None,
) -> float:
    """Infimum of the (optionally weighted) information over ``[lo, hi]``.

    Without ``theta1`` the target is the Fisher information itself; with
    ``theta1`` it is ``(theta1 - theta)^2 * info(theta)``, the quantity
    that governs separation criteria.  The infimum is located on a dense
    grid and sharpened by a golden-section pass over the best bracket.

    Raises ``CriterionUnsatisfiableError`` when the infimum is zero,
    which happens exactly when ``theta1`` lies inside the planning range.
    """
    lo = _finite("range lower end", lo)
    hi = _finite("range upper end", hi)
    if not lo < hi:
        raise DomainError(f"planning range must satisfy lo < hi, got [{lo}, {hi}]")
    if not (in_domain(family, lo) and in_domain(family, hi)):
        raise DomainError(
            f"planning range [{lo}, {hi}] must sit inside the domain of {family!r}"
        )
    if theta1 is not None:
        theta1 = _finite("theta1", theta1)
        if lo <= theta1 <= hi:
            raise CriterionUnsatisfiableError(
                f"alternative {theta1!r} lies inside the planning range; the "
                "weighted information infimum is zero there",
                theta=theta1,
            )

    grid = np.linspace(lo, hi, 10_001)
    vals = _info_values(family, grid)
    if theta1 is not None:
        vals = vals * (theta1 - grid) ** 2

    best = int(np.argmin(vals))
    inf_val = float(vals[best])
    inf_at = float(grid[best])

    def target(t: float) -> float:
        base = fisher_info(family, t)
        return base if theta1 is None else base * (theta1 - t) ** 2

    a = float(grid[max(best - 1, 0)])
    b = float(grid[min(best + 1, grid.size - 1)])
    if a < b:
        t_ref, v_ref = _golden_min(target, a, b)
        if v_ref < inf_val:
            inf_val, inf_at = v_ref, t_ref

    if not math.isfinite(inf_val) or inf_val <= 0.0:
        raise CriterionUnsatisfiableError(
            f"information infimum is not positive over [{lo}, {hi}] "
            f"(value {inf_val!r} near theta {inf_at!r})",
            theta=inf_at,
        )
    return inf_val


# ---------------------------------------------------------------------------
# Priors and sufficient statistics


@dataclass(frozen=True)
class NormalPrior:
    """Normal prior with mean ``mu0`` and variance ``tau2``."""

    mu0: float
    tau2: float

    def __post_init__(self):
        object.__setattr__(self, "mu0", _finite("mu0", self.mu0))
        object.__setattr__(self, "tau2", _positive("tau2", self.tau2))


@dataclass(frozen=True)
class GammaPrior:
    """Gamma prior with hyperparameters ``(a, b)``.

    The density is proportional to ``theta^(b-1) * exp(-a * theta)``, so
    ``b`` plays the shape role and ``a`` the rate role, and the prior
    mean is ``b / a``.  A Poisson sample of size ``n`` with total count
    ``s`` updates ``(a, b)`` to ``(a + n, b + s)``.
    """

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))


@dataclass(frozen=True)
class BetaPrior:
    """Beta prior with the usual shape pair ``(a, b)``; mean ``a / (a + b)``."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))


@dataclass(frozen=True)
class SufficientStat:
    """Sample size ``n`` and the statistic ``s`` it produced.

    ``s`` is the sample mean for the normal family and the sample sum for
    the count and waiting-time families.
    """

    n: int
    s: float

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n <= 0:
            raise DomainError(f"sample size must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "s", _finite("s", self.s))


def sample_suffstat(
    family: LikelihoodFamily, theta0: float, n: int, rng
) -> SufficientStat:
    """Draw one sufficient statistic for ``n`` observations at ``theta0``.

    Uniform consumption is fixed per family so that seeded runs are
    reproducible: the normal mean uses one deviate (its exact law), the
    Bernoulli and exponential sums use one uniform per observation, and
    the Poisson sum uses however many the inversion walk needs, in order.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    if not in_domain(family, theta0):
        raise DomainError(f"theta0 {theta0!r} lies outside the domain of {family!r}")

    if isinstance(family, NormalKnownVariance):
        s = theta0 + math.sqrt(family.sigma2 / n) * normal_deviate(rng)
        return SufficientStat(n, s)
    if isinstance(family, Poisson):
        total = 0
        for _ in range(n):
            total += poisson_deviate(rng, theta0)
        return SufficientStat(n, float(total))
    if isinstance(family, Bernoulli):
        u = rng.uniforms(n)
        return SufficientStat(n, float(int(np.count_nonzero(u < theta0))))
    u = rng.uniforms(n)
    return SufficientStat(n, float(-np.log1p(-u).sum() / theta0))


# ---------------------------------------------------------------------------
# Highest-density intervals


@dataclass(frozen=True)
class HpdInterval:
    """A highest-density interval and the posterior mass it captures."""

    lo: float
    hi: float
    mass: float


# ---------------------------------------------------------------------------
# Numeric CDF support for the gamma and beta posteriors
#
# Both densities are integrated in a transformed variable that absorbs the
# endpoint behaviour (u = sqrt(x) for the gamma, x = sin^2(pi u / 2) for
# the beta), tabulated cumulatively once per posterior, then evaluated
# with a local Simpson correction so single-point CDF values do not
# inherit the table's interpolation error.


class _TransformedCdf:
    def __init__(self, integrand, u_lo: float, u_hi: float):
        self._f = integrand
        self.edges, self.cum, self.residual = cumulative_table(
            integrand, u_lo, u_hi, tol=1e-12
        )
        self.total = float(self.cum[-1])
        if not (math.isfinite(self.total) and self.total > 0.0):
            raise AccuracyError("posterior density integrated to a non-positive total")

    def _local(self, u0: float, u1: float) -> float:
        if u1 <= u0:
            return 0.0
        x = np.linspace(u0, u1, 5)
        y = np.asarray(self._f(x), dtype=float)
        h = (u1 - u0) / 4.0
        return float((y[0] + 4.0 * y[1] + 2.0 * y[2] + 4.0 * y[3] + y[4]) * h / 3.0)

    def cdf(self, u: float) -> float:
        if u <= self.edges[0]:
            return 0.0
        if u >= self.edges[-1]:
            return 1.0
        i = int(np.searchsorted(self.edges, u, side="right")) - 1
        raw = float(self.cum[i]) + self._local(float(self.edges[i]), u)
        return min(max(raw / self.total, 0.0), 1.0)

    def quantile(self, p: float) -> float:
        target = p * self.total
        j = int(np.searchsorted(self.cum, target, side="left"))
        j = min(max(j, 1), self.cum.size - 1)
        a, b = float(self.edges[j - 1]), float(self.edges[j])
        u = 0.5 * (a + b)
        for _ in range(80):
            err = self.cdf(u) - p
            if abs(err) <= 1e-11:
                return u
            if err > 0.0:
                b = u
            else:
                a = u
            slope = float(self._f(np.array([u]))[0]) / self.total
            if slope > 0.0:
                step = u - err / slope
                u = step if a < step < b else 0.5 * (a + b)
            else:
                u = 0.5 * (a + b)
        if abs(self.cdf(u) - p) > 1e-8:
            raise AccuracyError(f"quantile iteration did not reach 1e-8 at p={p!r}")
        return u


def _check_prob(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or not 0.0 < alpha < 1.0:
        raise DomainError(f"probability must lie strictly inside (0, 1), got {alpha!r}")
    return alpha


def _check_level(level: float) -> float:
    level = float(level)
    if not math.isfinite(level) or not 0.0 < level < 1.0:
        raise DomainError(f"credibility level must lie in (0, 1), got {level!r}")
    return level


# ---------------------------------------------------------------------------
# Posterior families


@dataclass(frozen=True)
class NormalPosterior:
    """Normal posterior with the given mean and variance."""

    mean_value: float
    variance_value: float

    def __post_init__(self):
        object.__setattr__(self, "mean_value", _finite("mean", self.mean_value))
        object.__setattr__(
            self, "variance_value", _positive("variance", self.variance_value)
        )

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance_value)

    def mean(self) -> float:
        return self.mean_value

    def variance(self) -> float:
        return self.variance_value

    def quantile(self, alpha: float) -> float:
        return self.mean_value + self.sd * std_normal_quantile(_check_prob(alpha))

    def cdf(self, x: float) -> float:
        if math.isnan(x):
            raise DomainError("x must not be NaN")
        if math.isinf(x):
            return 1.0 if x > 0 else 0.0
        return std_normal_cdf((x - self.mean_value) / self.sd)

    def interval_mass(self, lo: float, hi: float) -> float:
        if not lo <= hi:
            raise DomainError(f"interval must satisfy lo <= hi, got [{lo}, {hi}]")
        z_hi = (hi - self.mean_value) / self.sd
        z_lo = (lo - self.mean_value) / self.sd
        upper = (1.0 if z_hi > 0 else 0.0) if math.isinf(z_hi) else std_normal_cdf(z_hi)
        lower = (1.0 if z_lo > 0 else 0.0) if math.isinf(z_lo) else std_normal_cdf(z_lo)
        return max(upper - lower, 0.0)

    def hpd(self, level: float) -> HpdInterval:
        level = _check_level(level)
        half = self.sd * std_normal_quantile(0.5 * (1.0 + level))
        return HpdInterval(self.mean_value - half, self.mean_value + half, level)

    def prob_above(self, theta1: float) -> float:
        theta1 = _finite("theta1", theta1)
        return 1.0 - std_normal_cdf((theta1 - self.mean_value) / self.sd)


class _NumericPosterior:
    """Shared plumbing for posteriors evaluated through a cached CDF table."""

    _table: _TransformedCdf | None

    def _ensure_table(self) -> _TransformedCdf:
        table = object.__getattribute__(self, "_table")
        if table is None:
            table = self._build_table()
            object.__setattr__(self, "_table", table)
        return table

    def _build_table(self) -> _TransformedCdf:  # pragma: no cover - overridden
        raise NotImplementedError

    def _to_u(self, x: float) -> float:
        raise NotImplementedError

    def _from_u(self, u: float) -> float:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        return self._ensure_table().cdf(self._to_u(x))

    def quantile(self, alpha: float) -> float:
        return self._from_u(self._ensure_table().quantile(_check_prob(alpha)))

    def interval_mass(self, lo: float, hi: float) -> float:
        if not lo <= hi:
            raise DomainError(f"interval must satisfy lo <= hi, got [{lo}, {hi}]")
        return max(self.cdf(hi) - self.cdf(lo), 0.0)

    def prob_above(self, theta1: float) -> float:
        return 1.0 - self.cdf(_finite("theta1", theta1))


@dataclass(frozen=True)
class GammaPosterior(_NumericPosterior):
    """Gamma posterior in the shape/rate parameterisation."""

    shape: float
    rate: float

    def __post_init__(self):
        object.__setattr__(self, "shape", _positive("shape", self.shape))
        object.__setattr__(self, "rate", _positive("rate", self.rate))
        object.__setattr__(self, "_table", None)

    def mean(self) -> float:
        return self.shape / self.rate

    def variance(self) -> float:
        return self.shape / (self.rate * self.rate)

    def _log_pdf(self, x: np.ndarray) -> np.ndarray:
        const = self.shape * math.log(self.rate) - ln_gamma(self.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = const - self.rate * x
            if self.shape != 1.0:  # avoid 0 * -inf at x = 0
                out = out + (self.shape - 1.0) * np.log(x)
        return out

    def _upper_cut(self) -> float:
        # Wilson-Hilferty upper quantile, inflated; the cumulative table's
        # self-normalisation makes the residual truncation negligible.
        z = std_normal_quantile(1.0 - 1e-13)
        k = self.shape
        wh = k * (1.0 - 1.0 / (9.0 * k) + z / (3.0 * math.sqrt(k))) ** 3 / self.rate
        return 1.5 * wh + 20.0 / self.rate

    @property
    def _power(self) -> int:
        # Integration variable u = x^(1/q).  The integrand near zero behaves
        # like u^(q*shape - 1); u = sqrt(x) already gives an exact polynomial
        # corner for half-integer shapes and a flat one for large shapes, and
        # otherwise the exponent is pushed past Simpson's smoothness order.
        edge = 2.0 * self.shape - 1.0
        if edge >= 4.5 or edge == math.floor(edge):
            return 2
        return max(2, math.ceil(5.5 / self.shape))

    def _build_table(self) -> _TransformedCdf:
        q = self._power

        def integrand(u: np.ndarray) -> np.ndarray:
            x = u**q
            with np.errstate(divide="ignore", invalid="ignore"):
                ld = self._log_pdf(x)
                jac = float(q) * u ** (q - 1)
                vals = np.where(np.isneginf(ld), 0.0, np.exp(ld)) * jac
            return np.nan_to_num(vals, nan=0.0, posinf=0.0)

        return _TransformedCdf(integrand, 0.0, self._upper_cut() ** (1.0 / q))

    def _to_u(self, x: float) -> float:
        if math.isnan(x):
            raise DomainError("x must not be NaN")
        if x <= 0.0:
            return 0.0
        if math.isinf(x):
            return float(self._ensure_table().edges[-1])
        return x ** (1.0 / self._power)

    def _from_u(self, u: float) -> float:
        return u**self._power

    def hpd(self, level: float) -> HpdInterval:
        level = _check_level(level)
        if self.shape < 1.0:
            raise UnsupportedShapeError(
                "highest-density intervals need a bounded density; "
                f"gamma shape {self.shape!r} is unbounded at zero"
            )
        hi = self.quantile(1.0 - 1e-9)
        grid = GridPosterior.from_log_density(self._log_pdf, 0.0, hi, GRID_NODES)
        return grid.hpd(level)


@dataclass(frozen=True)
class BetaPosterior(_NumericPosterior):
    """Beta posterior with shape pair ``(a, b)`` on the unit interval."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))
        object.__setattr__(self, "b", _positive("b", self.b))
        object.__setattr__(self, "_table", None)

    def mean(self) -> float:
        return self.a / (self.a + self.b)

    def variance(self) -> float:
        t = self.a + self.b
        return self.a * self.b / (t * t * (t + 1.0))

    def _log_pdf(self, x: np.ndarray) -> np.ndarray:
        ln_beta = ln_gamma(self.a) + ln_gamma(self.b) - ln_gamma(self.a + self.b)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.zeros_like(x) - ln_beta
            if self.a != 1.0:  # avoid 0 * -inf at the endpoints
                out = out + (self.a - 1.0) * np.log(x)
            if self.b != 1.0:
                out = out + (self.b - 1.0) * np.log1p(-x)
        return out

    def _build_table(self) -> _TransformedCdf:
        def integrand(u: np.ndarray) -> np.ndarray:
            half = 0.5 * math.pi * u
            x = np.sin(half) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                ld = self._log_pdf(x)
                jac = 0.5 * math.pi * np.sin(math.pi * u)
                vals = np.where(np.isneginf(ld), 0.0, np.exp(ld)) * jac
            return np.nan_to_num(vals, nan=0.0, posinf=0.0)

        return _TransformedCdf(integrand, 0.0, 1.0)

    def _to_u(self, x: float) -> float:
        if math.isnan(x):
            raise DomainError("x must not be NaN")
        if x <= 0.0:
            return 0.0
        if x >= 1.0:
            return 1.0
        return 2.0 / math.pi * math.asin(math.sqrt(x))

    def _from_u(self, u: float) -> float:
        s = math.sin(0.5 * math.pi * u)
        return s * s

    def hpd(self, level: float) -> HpdInterval:
        level = _check_level(level)
        if self.a < 1.0 or self.b < 1.0:
            raise UnsupportedShapeError(
                "highest-density intervals need a bounded density; "
                f"beta({self.a!r}, {self.b!r}) is unbounded at an endpoint"
            )
        grid = GridPosterior.from_log_density(self._log_pdf, 0.0, 1.0, GRID_NODES)
        return grid.hpd(level)


class GridPosterior:
    """Posterior represented by densities on a uniform grid of nodes.

    The density is trapezoid-normalised so the node weights (density
    times trapezoid weight) are nonnegative and sum to one.  Quantiles
    invert the trapezoid CDF with linear interpolation between nodes.
    """

    __slots__ = ("nodes", "density", "step", "_node_cdf", "_hpd_cache")

    def __init__(self, nodes: np.ndarray, density: np.ndarray):
        nodes = np.asarray(nodes, dtype=float)
        density = np.asarray(density, dtype=float)
        if nodes.ndim != 1 or nodes.size < 8:
            raise DomainError("grid posterior needs a 1-D grid of at least 8 nodes")
        if density.shape != nodes.shape:
            raise DomainError("grid density must match the node grid in shape")
        steps = np.diff(nodes)
        if not np.all(steps > 0.0):
            raise DomainError("grid nodes must be strictly increasing")
        step = float(steps[0])
        if not np.allclose(steps, step, rtol=1e-9, atol=0.0):
            raise DomainError("grid nodes must be uniformly spaced")
        if np.any(~np.isfinite(density)) or np.any(density < 0.0):
            raise DomainError("grid density values must be finite and nonnegative")

        total = float(np.trapezoid(density, dx=step))
        if not (math.isfinite(total) and total > 0.0):
            raise AccuracyError("grid density has non-positive total mass")
        density = density / total

        seg = 0.5 * (density[:-1] + density[1:]) * step
        node_cdf = np.concatenate(([0.0], np.cumsum(seg)))
        node_cdf /= node_cdf[-1]

        self.nodes = nodes
        self.nodes.setflags(write=False)
        self.density = density
        self.density.setflags(write=False)
        self.step = step
        self._node_cdf = node_cdf
        self._hpd_cache: dict[float, HpdInterval] = {}

    @classmethod
    def from_log_density(
        cls,
        log_density: Callable[[np.ndarray], np.ndarray],
        lo: float,
        hi: float,
        nodes: int = GRID_NODES,
    ) -> "GridPosterior":
        """Tabulate an unnormalised log density on ``nodes`` uniform points.

        The largest finite value is subtracted before exponentiation, so
        any proportionality constant in ``log_density`` is irrelevant.
        """
        if not lo < hi:
            raise DomainError(f"grid range must satisfy lo < hi, got [{lo}, {hi}]")
        x = np.linspace(lo, hi, int(nodes))
        with np.errstate(divide="ignore", invalid="ignore"):
            ld = np.asarray(log_density(x), dtype=float)
        if np.any(np.isposinf(ld)):
            raise UnsupportedShapeError("log density is unbounded on the grid range")
        finite = ld[np.isfinite(ld)]
        if finite.size == 0:
            raise AccuracyError("log density is nowhere finite on the grid range")
        d = np.exp(ld - finite.max())
        d[~np.isfinite(ld)] = 0.0
        return cls(x, d)

    @property
    def weights(self) -> np.ndarray:
        w = np.full(self.nodes.size, self.step)
        w[0] = w[-1] = 0.5 * self.step
        return w * self.density

    def mean(self) -> float:
        return float(np.dot(self.weights, self.nodes))

    def variance(self) -> float:
        w = self.weights
        mu = float(np.dot(w, self.nodes))
        return float(np.dot(w, (self.nodes - mu) ** 2))

    def cdf(self, x: float) -> float:
        if x <= self.nodes[0]:
            return 0.0
        if x >= self.nodes[-1]:
            return 1.0
        i = int(np.searchsorted(self.nodes, x, side="right")) - 1
        t = (x - self.nodes[i]) / self.step
        d_at = self.density[i] + t * (self.density[i + 1] - self.density[i])
        partial = 0.5 * (self.density[i] + d_at) * (x - self.nodes[i])
        return min(float(self._node_cdf[i] + partial), 1.0)

    def quantile(self, alpha: float) -> float:
        alpha = _check_prob(alpha)
        cdf = self._node_cdf
        j = int(np.searchsorted(cdf, alpha, side="left"))
        j = min(max(j, 1), cdf.size - 1)
        seg = cdf[j] - cdf[j - 1]
        if seg <= 0.0:
            return float(self.nodes[j])
        t = (alpha - cdf[j - 1]) / seg
        return float(self.nodes[j - 1] + t * self.step)

    def interval_mass(self, lo: float, hi: float) -> float:
        if not lo <= hi:
            raise DomainError(f"interval must satisfy lo <= hi, got [{lo}, {hi}]")
        return max(self.cdf(hi) - self.cdf(lo), 0.0)

    def prob_above(self, theta1: float) -> float:
        return 1.0 - self.cdf(_finite("theta1", theta1))

    def _superlevel(self, cut: float) -> tuple[float, float, float] | None:
        d, x, cdf = self.density, self.nodes, self._node_cdf
        mask = d >= cut
        idx = np.flatnonzero(mask)
        if idx.size == 0:
            return None
        first, last = int(idx[0]), int(idx[-1])
        if last - first + 1 != idx.size:
            raise UnsupportedShapeError(
                "posterior density has a disconnected super-level set; "
                "highest-density intervals require a single interval"
            )
        if first == 0:
            xl, cl = float(x[0]), 0.0
        else:
            t = (cut - d[first - 1]) / (d[first] - d[first - 1])
            xl = float(x[first - 1] + t * self.step)
            cl = float(cdf[first - 1] + 0.5 * (d[first - 1] + cut) * (xl - x[first - 1]))
        if last == d.size - 1:
            xr, cr = float(x[-1]), 1.0
        else:
            t = (d[last] - cut) / (d[last] - d[last + 1])
            xr = float(x[last] + t * self.step)
            cr = float(cdf[last] + 0.5 * (d[last] + cut) * (xr - x[last]))
        return xl, xr, max(cr - cl, 0.0)

    def hpd(self, level: float) -> HpdInterval:
        """Highest-density interval by bisection on the density cutoff.

        The captured mass lands in ``[level, level + 2 / K]`` for a grid
        of ``K`` nodes; disconnected super-level sets raise
        ``UnsupportedShapeError``.
        """
        level = _check_level(level)
        cached = self._hpd_cache.get(level)
        if cached is not None:
            return cached

        c_lo, c_hi = 0.0, float(self.density.max())
        best = self._superlevel(0.0)
        for _ in range(80):
            c = 0.5 * (c_lo + c_hi)
            seg = self._superlevel(c)
            if seg is not None and seg[2] >= level:
                best = seg
                c_lo = c
            else:
                c_hi = c
            if c_hi - c_lo <= 1e-15 * max(c_hi, 1.0):
                break
        if best is None or best[2] < level:
            raise AccuracyError("highest-density search failed to reach the level")
        result = HpdInterval(best[0], best[1], best[2])
        self._hpd_cache[level] = result
        return result


Posterior = Union[NormalPosterior, GammaPosterior, BetaPosterior, GridPosterior]


# ---------------------------------------------------------------------------
# Conjugate updating


def posterior(family: LikelihoodFamily, prior, stat: SufficientStat) -> Posterior:
    """Posterior for ``family`` under ``prior`` given a sufficient statistic.

    Supported pairs: normal/normal, Poisson/gamma, Bernoulli/beta, and
    exponential-rate/beta (rates restricted to (0, 1], returned on a
    grid).  Anything else raises ``ConfigurationError``.
    """
    if isinstance(family, NormalKnownVariance) and isinstance(prior, NormalPrior):
        c = family.sigma2 / (stat.n * prior.tau2)
        mean = (stat.s + c * prior.mu0) / (1.0 + c)
        var = family.sigma2 * prior.tau2 / (stat.n * prior.tau2 + family.sigma2)
        return NormalPosterior(mean, var)

    if isinstance(family, Poisson) and isinstance(prior, GammaPrior):
        if stat.s < 0.0 or stat.s != math.floor(stat.s):
            raise DomainError(f"Poisson total must be a nonnegative integer, got {stat.s!r}")
        return GammaPosterior(shape=prior.b + stat.s, rate=prior.a + stat.n)

    if isinstance(family, Bernoulli) and isinstance(prior, BetaPrior):
        if stat.s < 0.0 or stat.s > stat.n or stat.s != math.floor(stat.s):
            raise DomainError(
                f"Bernoulli total must be an integer in [0, n], got {stat.s!r}"
            )
        return BetaPosterior(prior.a + stat.s, prior.b + (stat.n - stat.s))

    if isinstance(family, ExponentialRate) and isinstance(prior, BetaPrior):
        if stat.s <= 0.0:
            raise DomainError(f"exponential total must be positive, got {stat.s!r}")
        if prior.b < 1.0:
            raise ConfigurationError(
                "rates on (0, 1] with beta prior need b >= 1; the posterior "
                "density is unbounded at 1 otherwise"
            )
        k = np.arange(1, GRID_NODES + 1, dtype=float)
        x = k / GRID_NODES
        with np.errstate(divide="ignore"):
            log_post = (prior.a - 1.0 + stat.n) * np.log(x) - x * stat.s
            if prior.b != 1.0:
                log_post = log_post + (prior.b - 1.0) * np.log1p(-x)
        finite_max = log_post[np.isfinite(log_post)].max()
        d = np.exp(log_post - finite_max)
        d[~np.isfinite(log_post)] = 0.0
        return GridPosterior(x, d)

    raise ConfigurationError(
        f"no conjugate update for family {family!r} with prior {prior!r}"
    )


# ---------------------------------------------------------------------------
# Posterior summaries (free-function view of the posterior methods)


def post_mean(post: Posterior) -> float:
    return post.mean()


def post_variance(post: Posterior) -> float:
    return post.variance()


def post_quantile(post: Posterior, alpha: float) -> float:
    return post.quantile(alpha)


def post_interval_mass(post: Posterior, lo: float, hi: float) -> float:
    return post.interval_mass(lo, hi)


def post_hpd(post: Posterior, level: float) -> HpdInterval:
    return post.hpd(level)


def post_prob_above(post: Posterior, theta1: float) -> float:
    return post.prob_above(theta1)
