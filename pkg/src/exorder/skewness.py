"""Expectile-based skewness measures.

``s2_tilde(alpha)`` compares the midpoint of the two alpha-expectiles to
the mean, scaled by the interexpectile range; ``s2`` is its normalized
version, bounded in (-1, 1).  ``big_s`` is the auxiliary function built
from stop-loss differences around the mean whose sign characterizes the
sign of ``s2`` over all levels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ._quad import quad_split
from .distributions import Sample, ScaledBernoulli
from .errors import DomainError
from .expectiles import ExpectileCurve, empirical_expectile, expectile

__all__ = [
    "Classification", "SkewnessProfile", "s2", "s2_tilde", "big_s",
    "big_s_tilde", "classify_skewness", "skewness_profile",
    "empirical_skewness_profile",
]

DEFAULT_PROFILE_GRID = np.linspace(0.005, 0.495, 99)
ANALYTIC_TOL = 1e-7

# in MAD units: covers body and tail of the distribution
DEFAULT_BIG_S_GRID = np.geomspace(0.01, 10.0, 60)


class Classification(enum.Enum):
    RIGHT_SKEWED = "right-skewed"
    LEFT_SKEWED = "left-skewed"
    SYMMETRIC = "symmetric"
    INDETERMINATE = "indeterminate"


def _check_half_open(alpha):
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"skewness level must lie in (0, 1/2), got {alpha}")


def s2_tilde(model, alpha: float, *, curve: ExpectileCurve | None = None) -> float:
    """Raw expectile skewness ``(e(1-a) + e(a) - 2 mu) / (e(1-a) - e(a))``."""
    _check_half_open(alpha)
    e = curve.expectile if curve is not None else (lambda a: expectile(model, a))
    lo, hi = e(alpha), e(1.0 - alpha)
    return (hi + lo - 2.0 * model.mean) / (hi - lo)


def s2(model, alpha: float, *, curve: ExpectileCurve | None = None) -> float:
    """Normalized expectile skewness, bounded in (-1, 1)."""
    return s2_tilde(model, alpha, curve=curve) / (1.0 - 2.0 * alpha)


def big_s(model, t: float, *, method: str = "stop_loss") -> float:
    """Stop-loss asymmetry around the mean at offset ``t > 0``.

    ``method='stop_loss'`` evaluates ``(pi(mu+t) - pi(mu-t)) / t + 1``;
    ``method='cdf'`` evaluates the equivalent ``(1/t) int_{mu-t}^{mu+t} F - 1``
    by quadrature (used as a cross-check).  Both are bounded by 1 in
    absolute value.
    """
    if t <= 0.0:
        raise DomainError(f"offset t must be positive, got {t}")
    mu = model.mean
    if method == "stop_loss":
        return (float(model.stop_loss(mu + t)) - float(model.stop_loss(mu - t))) / t + 1.0
    if method == "cdf":
        val = quad_split(lambda z: float(model.cdf(z)), mu - t, mu + t, [mu])
        return val / t - 1.0
    raise DomainError(f"unknown big_s method {method!r}")


def big_s_tilde(model, t: float, *, d: float | None = None) -> float:
    """``big_s`` with the offset measured in units of the MAD."""
    if d is None:
        d = model.mad()
    return big_s(model, t * d)


def classify_skewness(s2_tilde_values, tol: float = ANALYTIC_TOL) -> Classification:
    """Grid classification: one-sided up to ``tol`` with some clear excess."""
    vals = np.asarray(s2_tilde_values, dtype=float)
    if np.all(np.abs(vals) <= tol):
        return Classification.SYMMETRIC
    if np.all(vals >= -tol) and np.any(vals > tol):
        return Classification.RIGHT_SKEWED
    if np.all(vals <= tol) and np.any(vals < -tol):
        return Classification.LEFT_SKEWED
    return Classification.INDETERMINATE


@dataclass(frozen=True)
class SkewnessProfile:
    """Expectile skewness over a grid of levels in (0, 1/2)."""

    alphas: np.ndarray
    s2_tilde: np.ndarray
    s2: np.ndarray
    classification: Classification = field(default=Classification.INDETERMINATE)

    def to_dict(self):
        return {
            "alphas": self.alphas.tolist(),
            "s2_tilde": self.s2_tilde.tolist(),
            "s2": self.s2.tolist(),
            "classification": self.classification.value,
        }


def skewness_profile(model, alphas=None, tol: float = ANALYTIC_TOL) -> SkewnessProfile:
    """Evaluate and classify the expectile skewness of a model on a grid."""
    grid = DEFAULT_PROFILE_GRID if alphas is None else np.asarray(alphas, dtype=float)
    curve = None if isinstance(model, ScaledBernoulli) else ExpectileCurve(model)
    raw = np.array([s2_tilde(model, float(a), curve=curve) for a in grid])
    norm = raw / (1.0 - 2.0 * grid)
    return SkewnessProfile(grid, raw, norm, classify_skewness(raw, tol))


def empirical_skewness_profile(sample: Sample, alphas=None, tol: float | None = None,
                               *, bootstrap: int = 200, seed: int = 0) -> SkewnessProfile:
    """Profile from a sample; default tolerance is 3x the bootstrap SE."""
    grid = DEFAULT_PROFILE_GRID if alphas is None else np.asarray(alphas, dtype=float)

    def profile_of(values_sorted):
        s = Sample(values_sorted)
        mu = s.mean()
        out = np.empty(grid.size)
        for i, a in enumerate(grid):
            lo = empirical_expectile(s, float(a))
            hi = empirical_expectile(s, 1.0 - float(a))
            out[i] = (hi + lo - 2.0 * mu) / (hi - lo)
        return out

    raw = profile_of(sample.values)
    if tol is None:
        rng = np.random.default_rng(seed)
        boots = np.empty((bootstrap, grid.size))
        for b in range(bootstrap):
            boots[b] = profile_of(rng.choice(sample.values, size=sample.n, replace=True))
        tol = 3.0 * float(boots.std(axis=0, ddof=1).max())
    norm = raw / (1.0 - 2.0 * grid)
    return SkewnessProfile(grid, raw, norm, classify_skewness(raw, tol))
