"""Exact expected posterior functionals for the bundled studies.

For the conjugate normal, Poisson-gamma, and Bernoulli-uniform studies
the average of a posterior summary over repeated sampling collapses to a
closed form.  The exponential-rate study has no closed form; its
expectation is computed by deterministic quadrature over the sampling
law of the sufficient statistic and serves as the oracle the Monte Carlo
layer is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc

from .errors import AccuracyError, ConfigurationError, DomainError
from .functionals import (
    CredibleLength,
    Functional,
    PosteriorQuantile,
    PosteriorVariance,
    CenteredIntervalMass,
    TailMassAbove,
    evaluate,
)
from .models import BetaPrior, ExponentialRate, SufficientStat, posterior
from .quadrature import simpson_weights
from .specfun import ln_gamma, std_normal_cdf, std_normal_quantile

__all__ = [
    "ExactEval",
    "exact_normal",
    "normal_expected_density_at_truth",
    "normal_expected_density_sq_at_truth",
    "normal_tail_mass_convolution",
    "exact_poisson_variance",
    "exact_bernoulli_variance",
    "expbeta_expected",
    "expbeta_expected_many",
]

DEFAULT_ORACLE_NODES = 2001


@dataclass(frozen=True)
class ExactEval:
    """An exactly evaluated expectation.

    ``method`` records how the number was obtained ("closed_form" or
    "suffstat_quadrature"); quadrature results carry a relative
    ``error_estimate`` from comparing two node budgets.
    """

    value: float
    method: str
    error_estimate: float | None = None


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
# Normal observations, normal prior


def _normal_setup(sigma2, mu0, tau2, theta0, n):
    sigma2 = _positive("sigma2", sigma2)
    tau2 = _positive("tau2", tau2)
    mu0 = _finite("mu0", mu0)
    theta0 = _finite("theta0", theta0)
    n = _positive("n", n)
    shrink = sigma2 / (n * tau2)
    post_var = sigma2 * tau2 / (n * tau2 + sigma2)
    return sigma2, mu0, tau2, theta0, n, shrink, post_var


def exact_normal(
    functional: Functional,
    sigma2: float,
    mu0: float,
    tau2: float,
    theta0: float,
    n: float,
) -> ExactEval:
    """Expected value of ``functional`` for normal data with a normal prior.

    The posterior variance is data-free, so variance, centred-interval
    mass, and credible length average to themselves; the expected
    quantile shifts the expected posterior mean by a z multiple of the
    posterior standard deviation.  The tail-mass form replaces the
    posterior mean's sampling spread by the leading normal term, so it is
    exact only to first order; :func:`normal_tail_mass_convolution` keeps
    the full Gaussian convolution.
    """
    sigma2, mu0, tau2, theta0, n, shrink, post_var = _normal_setup(
        sigma2, mu0, tau2, theta0, n
    )
    post_sd = math.sqrt(post_var)

    if isinstance(functional, PosteriorVariance):
        return ExactEval(post_var, "closed_form")
    if isinstance(functional, PosteriorQuantile):
        mean = (theta0 + shrink * mu0) / (1.0 + shrink)
        z = std_normal_quantile(functional.alpha)
        return ExactEval(mean + post_sd * z, "closed_form")
    if isinstance(functional, CenteredIntervalMass):
        half = 0.5 * functional.length
        return ExactEval(2.0 * std_normal_cdf(half / post_sd) - 1.0, "closed_form")
    if isinstance(functional, CredibleLength):
        spread = std_normal_quantile(1.0 - 0.5 * functional.alpha) - std_normal_quantile(
            0.5 * functional.alpha
        )
        return ExactEval(spread * post_sd, "closed_form")
    if isinstance(functional, TailMassAbove):
        arg = math.sqrt(0.5 * n) * (functional.theta1 - theta0) / math.sqrt(sigma2)
        return ExactEval(1.0 - std_normal_cdf(arg), "closed_form")
    raise ConfigurationError(
        f"no closed form for functional {functional!r} in the normal study"
    )


def _normal_mean_law(sigma2, mu0, tau2, theta0, n):
    """Mean and variance of the posterior mean over repeated sampling."""
    shrink = sigma2 / (n * tau2)
    mean = (theta0 + shrink * mu0) / (1.0 + shrink)
    var = sigma2 / (n * (1.0 + shrink) ** 2)
    return mean, var


def normal_tail_mass_convolution(
    sigma2: float, mu0: float, tau2: float, theta0: float, n: float, theta1: float
) -> float:
    """Expected posterior mass above ``theta1``, via the full convolution.

    Averages ``1 - cdf(theta1)`` over the exact normal sampling law of
    the posterior mean, with no first-order truncation.
    """
    sigma2, mu0, tau2, theta0, n, shrink, post_var = _normal_setup(
        sigma2, mu0, tau2, theta0, n
    )
    theta1 = _finite("theta1", theta1)
    mean, var = _normal_mean_law(sigma2, mu0, tau2, theta0, n)
    return 1.0 - std_normal_cdf((theta1 - mean) / math.sqrt(post_var + var))


def normal_expected_density_at_truth(
    sigma2: float, mu0: float, tau2: float, theta0: float, n: float
) -> float:
    """Expected posterior density at the data-generating parameter."""
    sigma2, mu0, tau2, theta0, n, shrink, post_var = _normal_setup(
        sigma2, mu0, tau2, theta0, n
    )
    mean, var = _normal_mean_law(sigma2, mu0, tau2, theta0, n)
    total = post_var + var
    delta = theta0 - mean
    return math.exp(-0.5 * delta * delta / total) / math.sqrt(2.0 * math.pi * total)


def normal_expected_density_sq_at_truth(
    sigma2: float, mu0: float, tau2: float, theta0: float, n: float
) -> float:
    """Expected squared posterior density at the data-generating parameter.

    The squared normal density is itself a scaled normal density with
    half the variance, so the average is again a one-dimensional normal
    evaluation.
    """
    sigma2, mu0, tau2, theta0, n, shrink, post_var = _normal_setup(
        sigma2, mu0, tau2, theta0, n
    )
    mean, var = _normal_mean_law(sigma2, mu0, tau2, theta0, n)
    post_sd = math.sqrt(post_var)
    total = 0.5 * post_var + var
    delta = theta0 - mean
    peak = 1.0 / (2.0 * post_sd * math.sqrt(math.pi))
    return peak * math.exp(-0.5 * delta * delta / total) / math.sqrt(2.0 * math.pi * total)


# ---------------------------------------------------------------------------
# Poisson observations, gamma prior; Bernoulli observations, uniform prior


def exact_poisson_variance(a: float, b: float, theta0: float, n: float) -> ExactEval:
    """Expected posterior variance for Poisson counts under a gamma prior
    with rate ``a`` and shape ``b``: ``(b + n theta0) / (a + n)^2``."""
    a = _positive("a", a)
    b = _positive("b", b)
    theta0 = _positive("theta0", theta0)
    n = _positive("n", n)
    return ExactEval((b + n * theta0) / (a + n) ** 2, "closed_form")


def exact_bernoulli_variance(theta0: float, n: float) -> ExactEval:
    """Expected posterior variance for Bernoulli trials under the uniform
    prior, a rational function of ``n`` and ``theta0``."""
    theta0 = float(theta0)
    if not 0.0 < theta0 < 1.0:
        raise DomainError(f"theta0 must lie strictly inside (0, 1), got {theta0!r}")
    n = _positive("n", n)
    numer = n * n * theta0 - n * theta0 - n * (n - 1.0) * theta0 * theta0 + n + 1.0
    return ExactEval(numer / ((n + 2.0) ** 2 * (n + 3.0)), "closed_form")


# ---------------------------------------------------------------------------
# Exponential-rate observations, beta prior: quadrature oracle


def _gamma_quantile(shape: float, rate: float, p: float) -> float:
    """Quantile of a gamma law, Wilson-Hilferty start plus safeguarded Newton."""
    z = std_normal_quantile(p)
    k = shape
    y = k * max(1.0 - 1.0 / (9.0 * k) + z / (3.0 * math.sqrt(k)), 1e-3) ** 3
    y_lo, y_hi = 0.0, k + 20.0 * math.sqrt(k) + 40.0
    y = min(max(y, y_lo + 1e-12), y_hi)
    for _ in range(60):
        err = float(gammainc(k, y)) - p
        if err > 0.0:
            y_hi = y
        else:
            y_lo = y
        if abs(err) <= 1e-13:
            break
        pdf = math.exp((k - 1.0) * math.log(y) - y - ln_gamma(k))
        if pdf > 0.0:
            step = y - err / pdf
            y = step if y_lo < step < y_hi else 0.5 * (y_lo + y_hi)
        else:
            y = 0.5 * (y_lo + y_hi)
    return y / rate


def _check_expbeta_args(theta0: float, n: int, prior: BetaPrior):
    theta0 = float(theta0)
    if not 0.0 < theta0 <= 1.0:
        raise DomainError(f"theta0 must lie in (0, 1] for the rate study, got {theta0!r}")
    if not isinstance(n, int) or isinstance(n, bool) or n <= 0:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    if not isinstance(prior, BetaPrior):
        raise ConfigurationError(f"the rate study needs a beta prior, got {prior!r}")
    return theta0, n


def expbeta_expected_many(
    functionals: list[Functional],
    theta0: float,
    n: int,
    prior: BetaPrior = BetaPrior(1.5, 1.5),
    *,
    nodes: int = DEFAULT_ORACLE_NODES,
) -> list[ExactEval]:
    """Expected functionals for exponential data with a beta rate prior.

    The sufficient statistic has a gamma sampling law; each requested
    functional is evaluated on the grid posterior at every Simpson node
    of that law and averaged.  All functionals share one sweep.  The
    error estimate compares the full rule against its every-other-node
    subrule and is reported relative to the value.
    """
    theta0, n = _check_expbeta_args(theta0, n, prior)
    if not functionals:
        raise DomainError("at least one functional is required")
    # The error estimate halves the rule, so both node counts must be odd.
    if nodes < 5 or nodes % 4 != 1:
        raise DomainError(f"node budget must be 1 modulo 4 and >= 5, got {nodes!r}")

    s_lo = _gamma_quantile(float(n), theta0, 1e-8)
    s_hi = _gamma_quantile(float(n), theta0, 1.0 - 1e-8)
    grid = np.linspace(s_lo, s_hi, nodes)

    log_pdf = (
        n * math.log(theta0)
        + (n - 1.0) * np.log(grid)
        - theta0 * grid
        - ln_gamma(float(n))
    )
    pdf = np.exp(log_pdf)

    fvals = np.empty((len(functionals), nodes))
    family = ExponentialRate()
    for j, s in enumerate(grid):
        post = posterior(family, prior, SufficientStat(n, float(s)))
        for i, functional in enumerate(functionals):
            fvals[i, j] = evaluate(functional, post)

    def averages(step: int) -> np.ndarray:
        sub = slice(None, None, step)
        count = (nodes - 1) // step + 1
        w = simpson_weights(count, s_lo, s_hi) * pdf[sub]
        return fvals[:, sub] @ w / w.sum()

    full = averages(1)
    half = averages(2)

    out = []
    for functional, v_full, v_half in zip(functionals, full, half):
        rel = abs(v_full - v_half) / max(abs(v_full), 1e-300)
        if rel > 1e-5:
            raise AccuracyError(
                f"quadrature error estimate {rel:.3e} for {functional!r} exceeds "
                "1e-5; increase the node budget"
            )
        out.append(ExactEval(float(v_full), "suffstat_quadrature", float(rel)))
    return out


def expbeta_expected(
    functional: Functional,
    theta0: float,
    n: int,
    prior: BetaPrior = BetaPrior(1.5, 1.5),
    *,
    nodes: int = DEFAULT_ORACLE_NODES,
) -> ExactEval:
    """Single-functional version of :func:`expbeta_expected_many`."""
    return expbeta_expected_many([functional], theta0, n, prior, nodes=nodes)[0]
