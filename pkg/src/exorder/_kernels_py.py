"""Pure-NumPy estimator kernels (fallback backend).

Same contracts as the Cython module ``_kernels``: inputs are ascending
float64 arrays, outputs are Python floats.  The two backends agree to
floating-point rounding; use ``exorder.kernels.BACKEND`` to see which one
is active.
"""

import math

import numpy as np


def expectile_sorted(xs: np.ndarray, alpha: float) -> float:
    """Exact empirical alpha-expectile of a sorted sample.

    The sample identification function is continuous, strictly decreasing
    and piecewise linear in t with kinks at the order statistics, so the
    root is located by a sign scan and solved exactly on its segment —
    no iteration tolerance is involved.
    """
    n = xs.shape[0]
    if n == 1:
        return float(xs[0])
    csum = np.cumsum(xs)
    total = csum[-1]
    k = np.arange(1, n + 1)
    psi = alpha * (total - csum - (n - k) * xs) - (1.0 - alpha) * (k * xs - csum)
    # psi is nonincreasing along order statistics; count the prefix with psi >= 0
    idx = int(np.searchsorted(-psi, 0.0, side="right"))
    if idx <= 0:
        return float(xs[0])
    if idx >= n:
        return float(xs[-1])
    below_sum = csum[idx - 1]
    below_cnt = idx
    num = alpha * (total - below_sum) + (1.0 - alpha) * below_sum
    den = alpha * (n - below_cnt) + (1.0 - alpha) * below_cnt
    return float(num / den)


def expectile_sorted_weighted(xs: np.ndarray, ws: np.ndarray, alpha: float) -> float:
    """Exact alpha-expectile of a weighted discrete law on sorted atoms."""
    n = xs.shape[0]
    if n == 1:
        return float(xs[0])
    cw = np.cumsum(ws)
    cs = np.cumsum(ws * xs)
    w_total, s_total = cw[-1], cs[-1]
    psi = alpha * (s_total - cs - (w_total - cw) * xs) - (1.0 - alpha) * (cw * xs - cs)
    idx = int(np.searchsorted(-psi, 0.0, side="right"))
    if idx <= 0:
        return float(xs[0])
    if idx >= n:
        return float(xs[-1])
    below_w, below_s = cw[idx - 1], cs[idx - 1]
    num = alpha * (s_total - below_s) + (1.0 - alpha) * below_s
    den = alpha * (w_total - below_w) + (1.0 - alpha) * below_w
    return float(num / den)


def quantile_sorted(xs: np.ndarray, p: float) -> float:
    """Type-1 sample quantile: left-continuous inverse of the empirical cdf.

    Returns the order statistic with index ``ceil(n p)`` (1-based); the
    small slack guards against ``n * p`` landing a ULP above an integer.
    """
    n = xs.shape[0]
    idx = int(math.ceil(n * p - 1e-9))
    idx = min(max(idx, 1), n)
    return float(xs[idx - 1])


def gini_sorted(xs: np.ndarray) -> float:
    """Sample Gini mean difference (pairwise U-statistic) from sorted data.

    Uses the O(n) identity: sum_{i<j}(x_(j) - x_(i)) = sum_i (2i - n - 1) x_(i).
    """
    n = xs.shape[0]
    if n < 2:
        raise ValueError("Gini mean difference needs at least two observations")
    coeff = 2.0 * np.arange(1, n + 1) - (n + 1.0)
    return float(2.0 * np.dot(coeff, xs) / (n * (n - 1.0)))
