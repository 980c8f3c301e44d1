"""Command-line front end.

Four subcommands: ``size`` solves for the minimal sample size, ``eval``
compares the leading-order value with the exact one at a given n,
``simulate`` runs the seeded Monte Carlo harness, and ``table`` rebuilds
one of the bundled benchmark tables.  Results go to stdout (or ``--out``);
diagnostics go to stderr.  Exit codes: 0 success, 1 usage or domain
error, 2 criterion unsatisfiable, 3 numerical-accuracy failure.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from dataclasses import dataclass

from .criteria import (
    Acc,
    Alc,
    Apvc,
    EffectSize,
    asymptotic_functional,
    min_sample_size,
)
from .errors import (
    AccuracyError,
    BayesSizeError,
    ConfigurationError,
    CriterionUnsatisfiableError,
    DomainError,
    ReplicateError,
    UnsupportedShapeError,
)
from .exact import (
    exact_bernoulli_variance,
    exact_normal,
    exact_poisson_variance,
    expbeta_expected,
)
from .functionals import (
    CenteredIntervalMass,
    CredibleLength,
    Functional,
    PosteriorQuantile,
    PosteriorVariance,
    TailMassAbove,
)
from .models import (
    Bernoulli,
    BetaPrior,
    ExponentialRate,
    GammaPrior,
    LikelihoodFamily,
    NormalKnownVariance,
    NormalPrior,
    Poisson,
)
from .montecarlo import simulate_g
from .tables import (
    DEFAULT_REPLICATES,
    DEFAULT_SEED,
    TableRow,
    build_table,
    render_csv,
    render_text,
)

__all__ = ["main"]


class _UsageError(Exception):
    def __init__(self, message: str, usage: str = ""):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we map usage to 1
        raise _UsageError(message, self.format_usage())


_FLOAT_KEYS = ("sigma2", "mu0", "tau2", "a", "b", "eps", "len", "alpha", "theta1", "theta0")
_INT_KEYS = ("n", "m", "seed")
_STR_KEYS = ("model", "criterion", "range", "format", "out")
_BOOL_KEYS = ("fresh-seed",)


def _add_options(sub: argparse.ArgumentParser):
    sub.add_argument("--model", choices=["normal", "poisson", "bernoulli", "exp"])
    for key in _FLOAT_KEYS:
        if key != "model":
            sub.add_argument(f"--{key}", type=float, default=None)
    sub.add_argument("--criterion", choices=["apvc", "acc", "alc", "alc-quantile", "es"])
    sub.add_argument("--range", dest="range_", metavar="LO:HI", default=None)
    for key in _INT_KEYS:
        sub.add_argument(f"--{key}", type=int, default=None)
    sub.add_argument("--format", choices=["text", "csv"], default=None)
    sub.add_argument("--out", default=None)
    sub.add_argument("--config", default=None)
    sub.add_argument("--fresh-seed", dest="fresh_seed", action="store_const", const=True)


def _build_parser() -> _Parser:
    parser = _Parser(prog="bayessize", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("size", "eval", "simulate"):
        _add_options(subs.add_parser(name))
    table = subs.add_parser("table")
    table.add_argument("which", type=int)
    _add_options(table)
    return parser


def _parse_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read config file {path}: {exc}")
    values: dict[str, str] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise _UsageError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values


def _coerce(key: str, raw: str):
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _BOOL_KEYS:
            lowered = raw.lower()
            if lowered in ("1", "true", "yes"):
                return True
            if lowered in ("0", "false", "no"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if key in _STR_KEYS:
            return raw
    except ValueError as exc:
        raise _UsageError(f"config value for {key!r}: {exc}")
    raise _UsageError(f"unknown config key {key!r}")


@dataclass
class _Settings:
    command: str
    which: int | None
    model: str | None
    sigma2: float | None
    mu0: float | None
    tau2: float | None
    a: float | None
    b: float | None
    criterion: str | None
    eps: float | None
    len: float | None
    alpha: float
    theta1: float | None
    theta0: float | None
    range_: str | None
    n: int | None
    m: int
    seed: int
    format: str
    out: str | None
    fresh_seed: bool


_ATTR_FOR_KEY = {"range": "range_", "fresh-seed": "fresh_seed", "len": "len"}


def _merge(args: argparse.Namespace) -> _Settings:
    """Flag values win over config-file values win over defaults."""
    config = _parse_config_file(args.config) if args.config else {}
    merged: dict[str, object] = {}
    for key, raw in config.items():
        merged[_ATTR_FOR_KEY.get(key, key)] = _coerce(key, raw)
    for key in (*_FLOAT_KEYS, *_INT_KEYS, *_STR_KEYS, *_BOOL_KEYS):
        attr = _ATTR_FOR_KEY.get(key, key)
        flag_value = getattr(args, attr, None)
        if flag_value is not None:
            merged[attr] = flag_value

    seed = merged.get("seed", DEFAULT_SEED)
    if merged.get("fresh_seed", False):
        seed = secrets.randbits(63)
    return _Settings(
        command=args.command,
        which=getattr(args, "which", None),
        model=merged.get("model"),
        sigma2=merged.get("sigma2"),
        mu0=merged.get("mu0"),
        tau2=merged.get("tau2"),
        a=merged.get("a"),
        b=merged.get("b"),
        criterion=merged.get("criterion"),
        eps=merged.get("eps"),
        len=merged.get("len"),
        alpha=merged.get("alpha", 0.05),
        theta1=merged.get("theta1"),
        theta0=merged.get("theta0"),
        range_=merged.get("range_"),
        n=merged.get("n"),
        m=merged.get("m", DEFAULT_REPLICATES),
        seed=seed,
        format=merged.get("format", "text"),
        out=merged.get("out"),
        fresh_seed=merged.get("fresh_seed", False),
    )


def _require(value, flag: str):
    if value is None:
        raise _UsageError(f"missing required flag --{flag}")
    return value


def _family(settings: _Settings) -> LikelihoodFamily:
    model = _require(settings.model, "model")
    if model == "normal":
        return NormalKnownVariance(_require(settings.sigma2, "sigma2"))
    if model == "poisson":
        return Poisson()
    if model == "bernoulli":
        return Bernoulli()
    return ExponentialRate()


def _prior(settings: _Settings):
    """Prior for the chosen model, with the study defaults filled in."""
    model = settings.model
    if model == "normal":
        return NormalPrior(_require(settings.mu0, "mu0"), _require(settings.tau2, "tau2"))
    if model == "poisson":
        return GammaPrior(_require(settings.a, "a"), _require(settings.b, "b"))
    if model == "bernoulli":
        a = 1.0 if settings.a is None else settings.a
        b = 1.0 if settings.b is None else settings.b
        return BetaPrior(a, b)
    a = 1.5 if settings.a is None else settings.a
    b = 1.5 if settings.b is None else settings.b
    return BetaPrior(a, b)


def _parse_range(raw: str | None) -> tuple[float, float]:
    raw = _require(raw, "range")
    lo_text, sep, hi_text = raw.partition(":")
    if not sep:
        raise _UsageError(f"--range expects LO:HI, got {raw!r}")
    try:
        return float(lo_text), float(hi_text)
    except ValueError:
        raise _UsageError(f"--range expects numeric LO:HI, got {raw!r}") from None


def _criterion_object(settings: _Settings):
    name = _require(settings.criterion, "criterion")
    lo, hi = _parse_range(settings.range_)
    if name == "apvc":
        return Apvc(_require(settings.eps, "eps"), lo, hi)
    if name == "acc":
        return Acc(_require(settings.len, "len"), settings.alpha, lo, hi)
    if name == "alc":
        return Alc(_require(settings.len, "len"), settings.alpha, lo, hi)
    if name == "es":
        return EffectSize(_require(settings.theta1, "theta1"), settings.alpha, lo, hi)
    raise _UsageError(f"criterion {name!r} has no sample-size form")


def _functional_object(settings: _Settings) -> Functional:
    name = _require(settings.criterion, "criterion")
    if name == "apvc":
        return PosteriorVariance()
    if name == "acc":
        return CenteredIntervalMass(_require(settings.len, "len"))
    if name == "alc":
        return CredibleLength(settings.alpha)
    if name == "alc-quantile":
        return PosteriorQuantile(settings.alpha)
    return TailMassAbove(_require(settings.theta1, "theta1"))


def _exact_value(settings: _Settings, functional: Functional, theta0: float, n: int):
    """Closed-form or oracle expectation where one exists, else None."""
    model = settings.model
    if model == "normal":
        mu0 = _require(settings.mu0, "mu0")
        tau2 = _require(settings.tau2, "tau2")
        return exact_normal(functional, settings.sigma2, mu0, tau2, theta0, n)
    if model == "poisson" and isinstance(functional, PosteriorVariance):
        a = _require(settings.a, "a")
        b = _require(settings.b, "b")
        return exact_poisson_variance(a, b, theta0, n)
    if model == "bernoulli" and isinstance(functional, PosteriorVariance):
        prior = _prior(settings)
        if prior.a == 1.0 and prior.b == 1.0:
            return exact_bernoulli_variance(theta0, n)
        return None
    if model == "exp":
        return expbeta_expected(functional, theta0, n, _prior(settings))
    return None


def _cmd_size(settings: _Settings) -> str:
    result = min_sample_size(_criterion_object(settings), _family(settings))
    return (
        f"n_min={result.n_min}\n"
        f"n_real={result.n_real!r}\n"
        f"inf_info={result.inf_info!r}\n"
    )


def _params_text(settings: _Settings) -> str:
    model = settings.model
    if model == "normal":
        return f"sigma2={settings.sigma2!r};mu0={settings.mu0!r};tau2={settings.tau2!r}"
    prior = _prior(settings)
    return f"a={prior.a!r};b={prior.b!r}"


def _cmd_eval(settings: _Settings) -> str:
    functional = _functional_object(settings)
    family = _family(settings)
    theta0 = _require(settings.theta0, "theta0")
    n = _require(settings.n, "n")
    if not isinstance(n, int) or n <= 0:
        raise _UsageError(f"--n must be a positive integer, got {n!r}")
    star = asymptotic_functional(functional, family, theta0, n)
    exact = _exact_value(settings, functional, theta0, n)
    if settings.format == "csv":
        if exact is None:
            raise DomainError(
                "no exact value for this model and functional; a csv row "
                "needs one next to g_star, use text output instead"
            )
        row = TableRow(
            settings.criterion, settings.model, "", _params_text(settings),
            theta0, n, None, None, exact.value, star,
        )
        return render_csv([row])
    lines = []
    if exact is not None:
        lines.append(f"g_exact={exact.value!r}")
    lines.append(f"g_star={star!r}")
    if exact is not None:
        lines.append(f"diff={exact.value - star!r}")
    return "\n".join(lines) + "\n"


def _cmd_simulate(settings: _Settings) -> str:
    functional = _functional_object(settings)
    family = _family(settings)
    prior = _prior(settings)
    theta0 = _require(settings.theta0, "theta0")
    n = _require(settings.n, "n")
    estimate = simulate_g(
        family, prior, theta0, n, settings.m, functional, settings.seed
    )
    if settings.format == "csv":
        star = asymptotic_functional(functional, family, theta0, n)
        exact = None
        if settings.model in ("normal", "poisson", "bernoulli"):
            exact = _exact_value(settings, functional, theta0, n)
        row = TableRow(
            settings.criterion, settings.model, "", _params_text(settings), theta0, n,
            estimate.mean, estimate.std_err,
            None if exact is None else exact.value, star,
        )
        return render_csv([row])
    return (
        f"mean={estimate.mean!r}\n"
        f"std_err={estimate.std_err!r}\n"
        f"m={estimate.replicates}\n"
        f"seed={estimate.seed}\n"
    )


def _cmd_table(settings: _Settings) -> str:
    which = settings.which
    if which not in (1, 2, 3):
        raise _UsageError(f"unknown table index {which!r}; expected 1, 2, or 3")
    rows = build_table(which, m=settings.m, seed=settings.seed)
    if settings.format == "csv":
        return render_csv(rows)
    return render_text(rows)


_COMMANDS = {
    "size": _cmd_size,
    "eval": _cmd_eval,
    "simulate": _cmd_simulate,
    "table": _cmd_table,
}


def _emit(text: str, out_path: str | None):
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        settings = _merge(args)
        text = _COMMANDS[settings.command](settings)
    except _UsageError as exc:
        if exc.usage:
            sys.stderr.write(exc.usage)
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except (DomainError, ConfigurationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except CriterionUnsatisfiableError as exc:
        sys.stderr.write(f"error: criterion unsatisfiable: {exc}\n")
        return 2
    except (AccuracyError, UnsupportedShapeError, ReplicateError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except BayesSizeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _emit(text, settings.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
