"""Analytic and empirical expectiles, the expectile cdf, and the
interexpectile / interquantile ranges.

The alpha-expectile of X is the unique solution of

    alpha * E(X - t)_+ = (1 - alpha) * E(X - t)_-,

equivalently the alpha-quantile of the transformed cdf

    F_breve(t) = (pi(t) - mu + t) / (2 pi(t) - mu + t),

where ``pi`` is the stop-loss transform and ``mu`` the mean.  The analytic
solver runs safeguarded Newton on this first-order condition; empirical
expectiles are solved exactly on the piecewise-linear sample
identification function (see :mod:`exorder.kernels`).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

import numpy as np

from . import kernels
from .distributions import ContinuousModel, Sample, ScaledBernoulli
from .errors import ConvergenceError, DomainError, MomentError

__all__ = [
    "IdentificationFn", "ExpectileCurve", "expectile", "expectile_cdf",
    "empirical_expectile", "empirical_ier", "empirical_iqr", "ier", "iqr",
]

DEFAULT_CURVE_GRID = np.linspace(0.005, 0.995, 199)


@dataclass(frozen=True)
class IdentificationFn:
    """The asymmetric linear function whose zero expectation defines e(alpha).

    ``I(x, y) = alpha (y - x) 1{y >= x} - (1 - alpha)(x - y) 1{y < x}``;
    at alpha = 1/2 this reduces to ``(y - x) / 2``.
    """

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha must lie in (0, 1), got {self.alpha}")

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        weight = np.where(y >= x, self.alpha, 1.0 - self.alpha)
        out = weight * (y - x)
        return float(out) if out.ndim == 0 else out


def expectile_cdf(model, t):
    """The transformed cdf whose quantiles are the expectiles.

    Works for any model exposing ``stop_loss`` and ``mean`` (including the
    two-point law).  Strictly increasing on the interior of the support.
    """
    mu = model.mean
    pi = model.stop_loss(t)
    t_arr = np.asarray(t, dtype=float)
    num = pi - mu + t_arr
    den = 2.0 * pi - mu + t_arr
    out = num / den
    return float(out) if out.ndim == 0 else out


def expectile(model, alpha: float, *, tol: float = 1e-12, max_iter: int = 200) -> float:
    """The alpha-expectile of a model, to ``|F_breve(t) - alpha| < tol``.

    Safeguarded Newton on the first-order condition with a bisection
    fallback; the initial bracket ``[q(1e-6), q(1 - 1e-6)]`` (clipped to
    the support) is expanded geometrically in the rare case it does not
    straddle the root.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if isinstance(model, ScaledBernoulli):
        xs = np.array([0.0, model.a])
        ws = np.array([1.0 - model.p, model.p])
        return kernels.expectile_sorted_weighted(xs, ws, alpha)
    if not model.has_mean:
        raise MomentError(f"expectiles of {model!r} need a finite mean")
    mu = model.mean
    if alpha == 0.5:
        return mu

    def g(t):
        # alpha * E(X-t)_+ - (1-alpha) * E(X-t)_-; strictly decreasing
        pi = float(model.stop_loss(t))
        return alpha * pi - (1.0 - alpha) * (pi - mu + t)

    lo_s, hi_s = model.support
    lo = max(float(model.quantile(1e-6)), lo_s if np.isfinite(lo_s) else -np.inf)
    hi = min(float(model.quantile(1.0 - 1e-6)), hi_s if np.isfinite(hi_s) else np.inf)
    g_lo, g_hi = g(lo), g(hi)
    width = max(hi - lo, 1.0)
    while g_lo < 0.0:
        lo, width = lo - width, 2.0 * width
        lo = max(lo, lo_s)
        g_lo = g(lo)
        if lo == lo_s:
            break
    while g_hi > 0.0:
        hi, width = hi + width, 2.0 * width
        hi = min(hi, hi_s)
        g_hi = g(hi)
        if hi == hi_s:
            break

    t = 0.5 * (lo + hi)
    for iteration in range(max_iter):
        pi = float(model.stop_loss(t))
        gt = alpha * pi - (1.0 - alpha) * (pi - mu + t)
        scale = 2.0 * pi - mu + t  # = E|X - t| > 0
        if abs(gt) <= tol * scale:
            return t
        if gt > 0.0:
            lo = t
        else:
            hi = t
        sf = float(model.sf(t))
        slope = (1.0 - 2.0 * alpha) * sf - (1.0 - alpha)
        step = t - gt / slope if slope != 0.0 else np.nan
        if not np.isfinite(step) or not lo < step < hi:
            step = 0.5 * (lo + hi)
        if step == t:
            step = 0.5 * (lo + hi)
        t = step
        if hi - lo <= 4.0 * np.finfo(float).eps * max(1.0, abs(t)):
            return t
    residual = abs(g(t)) / (2.0 * float(model.stop_loss(t)) - mu + t)
    raise ConvergenceError("expectile solver did not converge",
                           iterations=max_iter, last_value=t, residual=residual)


class ExpectileCurve:
    """Cached map ``alpha -> e(alpha)`` for one model.

    Cache entries are exactly the values a cold recomputation would
    produce; a lock makes concurrent reads observe the same guarantee.
    """

    def __init__(self, model: ContinuousModel, alphas=None):
        self.model = model
        self._cache: dict[float, float] = {}
        self._lock = threading.Lock()
        if alphas is not None:
            self.build(alphas)

    def build(self, alphas=None) -> "ExpectileCurve":
        for a in (DEFAULT_CURVE_GRID if alphas is None else alphas):
            self.expectile(float(a))
        return self

    def expectile(self, alpha: float) -> float:
        with self._lock:
            hit = self._cache.get(alpha)
        if hit is not None:
            return hit
        val = expectile(self.model, alpha)
        with self._lock:
            self._cache.setdefault(alpha, val)
        return val

    __call__ = expectile

    def inverse(self, t):
        return expectile_cdf(self.model, t)

    @property
    def alphas(self) -> np.ndarray:
        with self._lock:
            return np.array(sorted(self._cache))


def _curve_or_model_expectile(obj, alpha):
    if isinstance(obj, ExpectileCurve):
        return obj.expectile(alpha)
    return expectile(obj, alpha)


def ier(model_or_curve, alpha: float) -> float:
    """Interexpectile range ``e(1 - alpha) - e(alpha)`` for alpha < 1/2."""
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"IER level must lie in (0, 1/2), got {alpha}")
    return (_curve_or_model_expectile(model_or_curve, 1.0 - alpha)
            - _curve_or_model_expectile(model_or_curve, alpha))


def iqr(model, alpha: float) -> float:
    """Interquantile range ``q(1 - alpha) - q(alpha)`` for alpha < 1/2."""
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"IQR level must lie in (0, 1/2), got {alpha}")
    return float(model.quantile(1.0 - alpha)) - float(model.quantile(alpha))


# ---------------------------------------------------------------------------
# empirical counterparts
# ---------------------------------------------------------------------------

def empirical_expectile(sample: Sample, alpha: float) -> float:
    """Empirical alpha-expectile (exact root of the sample identification fn)."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    return kernels.expectile_sorted(sample.values, alpha)


def empirical_quantile(sample: Sample, p: float) -> float:
    """Type-1 sample quantile (left-continuous inverse of the empirical cdf)."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {p}")
    return kernels.quantile_sorted(sample.values, p)


def empirical_ier(sample: Sample, alpha: float) -> float:
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"IER level must lie in (0, 1/2), got {alpha}")
    return (kernels.expectile_sorted(sample.values, 1.0 - alpha)
            - kernels.expectile_sorted(sample.values, alpha))


def empirical_iqr(sample: Sample, alpha: float) -> float:
    if not 0.0 < alpha < 0.5:
        raise DomainError(f"IQR level must lie in (0, 1/2), got {alpha}")
    return (kernels.quantile_sorted(sample.values, 1.0 - alpha)
            - kernels.quantile_sorted(sample.values, alpha))
