"""Monte Carlo harness for CLT validation and estimator efficiency checks.

Reproducibility contract: replication ``r`` of an experiment with master
seed ``s`` uses the 64-bit seed ``splitmix64(s + (r + 1) * GOLDEN)`` where
``GOLDEN = 0x9E3779B97F4A7C15`` and ``splitmix64`` is the standard finalizer

    z = x;  z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB;  z ^= z >> 31

(all arithmetic mod 2^64).  That seed keys the Philox generator used by
:func:`exorder.distributions.sample_from`, so identical configs produce
bit-identical streams and replications are order-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .asymptotics import (asv_gini_raw, asv_mad_raw, asv_sd_raw,
                          gini_mean_difference, sigma2_ier, sigma2_iqr)
from .distributions import parse_spec, sample_from
from .errors import DomainError, MomentError
from .expectiles import expectile, iqr
from .simulation_seeds import derive_seed  # re-export site, see module

__all__ = [
    "ExperimentConfig", "ExperimentResult", "ConsistencyResult",
    "run_clt_experiment", "run_consistency_experiment", "run_asv_battery",
    "derive_seed", "ESTIMATORS",
]


def _est_sd(values: np.ndarray) -> float:
    return float(values.std(ddof=1))


def _est_mad(values: np.ndarray) -> float:
    return float(np.abs(values - values.mean()).mean())


def _est_gini(values: np.ndarray) -> float:
    return kernels.gini_sorted(values)


def _make_est_ier(alpha):
    def est(values):
        return (kernels.expectile_sorted(values, 1.0 - alpha)
                - kernels.expectile_sorted(values, alpha))
    return est


def _make_est_iqr(alpha):
    def est(values):
        return (kernels.quantile_sorted(values, 1.0 - alpha)
                - kernels.quantile_sorted(values, alpha))
    return est


ESTIMATORS = ("ier", "iqr", "sd", "mad", "gini")


def _estimator_fn(name, alpha):
    if name == "ier":
        return _make_est_ier(alpha)
    if name == "iqr":
        return _make_est_iqr(alpha)
    if name == "sd":
        return _est_sd
    if name == "mad":
        return _est_mad
    if name == "gini":
        return _est_gini
    raise DomainError(f"unknown estimator {name!r}; choose from {ESTIMATORS}")


def _target_value(model, name, alpha):
    if name == "ier":
        return (expectile(model, 1.0 - alpha) - expectile(model, alpha))
    if name == "iqr":
        return iqr(model, alpha)
    if name == "sd":
        return float(np.sqrt(model.variance))
    if name == "mad":
        return model.mad()
    if name == "gini":
        return gini_mean_difference(model)
    raise DomainError(f"unknown estimator {name!r}")


def _target_asv(model, name, alpha):
    if name == "ier":
        return sigma2_ier(model, alpha)
    if name == "iqr":
        return sigma2_iqr(model, alpha)
    if name == "sd":
        raw = asv_sd_raw(model)
        if raw is None:
            raise MomentError(f"sd estimator of {model!r} has no finite ASV")
        return raw
    if name == "mad":
        return asv_mad_raw(model)
    if name == "gini":
        return asv_gini_raw(model)
    raise DomainError(f"unknown estimator {name!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully determines one experiment's output stream."""

    model_spec: str
    estimator: str = "ier"
    alpha: float = 0.25
    n: int = 20000
    replications: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"sample size must be >= 2, got {self.n}")
        if self.replications < 1:
            raise DomainError(f"replication count must be >= 1, got {self.replications}")
        if self.estimator not in ESTIMATORS:
            raise DomainError(f"unknown estimator {self.estimator!r}")
        if self.estimator in ("ier", "iqr") and not 0.0 < self.alpha < 0.5:
            raise DomainError(f"alpha must lie in (0, 1/2), got {self.alpha}")

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        """Parse a small ``key = value`` config (one pair per line, # comments)."""
        kw = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError(f"config line {lineno} is not 'key = value': {raw!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            if key in ("model", "model_spec"):
                kw["model_spec"] = val
            elif key == "estimator":
                kw["estimator"] = val
            elif key == "alpha":
                kw["alpha"] = float(val)
            elif key in ("n", "replications", "seed"):
                kw[key] = int(val)
            else:
                raise DomainError(f"unknown config key {key!r} on line {lineno}")
        if "model_spec" not in kw:
            raise DomainError("config must set 'model'")
        return cls(**kw)

    def model(self):
        return parse_spec(self.model_spec)


@dataclass(frozen=True)
class ExperimentResult:
    """Replication-level estimates plus the analytic CLT target."""

    config: ExperimentConfig
    estimates: np.ndarray
    target: float
    target_asv: float

    @property
    def scaled_variance(self) -> float:
        return float(self.config.n * self.estimates.var(ddof=1))

    @property
    def z_scores(self) -> np.ndarray:
        scale = np.sqrt(self.target_asv / self.config.n)
        return (self.estimates - self.target) / scale

    def summary(self) -> dict:
        return {
            "model": self.config.model_spec,
            "estimator": self.config.estimator,
            "alpha": self.config.alpha,
            "n": self.config.n,
            "replications": self.config.replications,
            "seed": self.config.seed,
            "target": self.target,
            "target_asv": self.target_asv,
            "mean_estimate": float(self.estimates.mean()),
            "scaled_variance": self.scaled_variance,
            "relative_deviation": self.scaled_variance / self.target_asv - 1.0,
        }


def run_clt_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Replicate one estimator on fresh samples and compare with its CLT.

    Estimates are produced (and must be reduced) in replication order so
    serial and parallel runs agree exactly.
    """
    model = config.model()
    est = _estimator_fn(config.estimator, config.alpha)
    target = _target_value(model, config.estimator, config.alpha)
    target_asv = _target_asv(model, config.estimator, config.alpha)
    estimates = np.empty(config.replications)
    for r in range(config.replications):
        sample = sample_from(model, config.n, derive_seed(config.seed, r))
        estimates[r] = est(sample.values)
    estimates.flags.writeable = False
    return ExperimentResult(config, estimates, target, target_asv)


@dataclass(frozen=True)
class ConsistencyResult:
    ns: tuple
    rms_errors: tuple
    slope: float
    target: float
    rows: list = field(repr=False)


def run_consistency_experiment(model, alpha: float, ns=(100, 1000, 10000, 100000),
                               seed: int = 0, replications: int = 100) -> ConsistencyResult:
    """RMS error of the empirical IER along a ladder of sample sizes.

    Strong consistency shows as a decreasing error curve; the CLT rate
    shows as a log-log slope near -1/2.
    """
    target = expectile(model, 1.0 - alpha) - expectile(model, alpha)
    rms = []
    rows = []
    counter = 0
    for n in ns:
        errs = np.empty(replications)
        for r in range(replications):
            sample = sample_from(model, n, derive_seed(seed, counter))
            counter += 1
            est = (kernels.expectile_sorted(sample.values, 1.0 - alpha)
                   - kernels.expectile_sorted(sample.values, alpha))
            errs[r] = est - target
        rms.append(float(np.sqrt(np.mean(errs ** 2))))
        rows.append({"n": n, "rms_error": rms[-1]})
    slope = float(np.polyfit(np.log(ns), np.log(rms), 1)[0])
    return ConsistencyResult(tuple(ns), tuple(rms), slope, target, rows)


def run_asv_battery(model_specs, estimators=ESTIMATORS, alphas=(0.25,), *,
                    n: int = 20000, replications: int = 2000, seed: int = 0):
    """Monte Carlo standardized scaled variances against the analytic ASVs.

    Returns ``(rows, max_relative_deviation)``; each row carries the MC
    value, the analytic value and their relative gap.  Estimators whose
    ASV does not exist for a model are skipped.
    """
    rows = []
    worst = 0.0
    for spec in model_specs:
        model = parse_spec(spec)
        for name in estimators:
            for alpha in (alphas if name in ("ier", "iqr") else (None,)):
                a = 0.25 if alpha is None else float(alpha)
                try:
                    analytic_std = _target_asv(model, name, a) / _target_value(model, name, a) ** 2
                except MomentError:
                    continue
                config = ExperimentConfig(spec, name, a, n, replications, seed)
                result = run_clt_experiment(config)
                mc_std = result.scaled_variance / result.target ** 2
                rel = mc_std / analytic_std - 1.0
                worst = max(worst, abs(rel))
                rows.append({"model": spec, "estimator": name, "alpha": a,
                             "mc": mc_std, "analytic": analytic_std,
                             "relative_deviation": rel})
    return rows, worst
