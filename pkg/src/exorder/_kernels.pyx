# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled estimator kernels (hot path of the Monte Carlo harness).

Contracts match ``_kernels_py``: ascending float64 input, float output.
"""

from libc.math cimport ceil


cpdef double expectile_sorted(const double[::1] xs, double alpha):
    """Exact empirical alpha-expectile of a sorted sample (single pass)."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t k
    cdef double total = 0.0, run = 0.0, x, psi
    cdef double below_sum, num, den
    if n == 1:
        return xs[0]
    for k in range(n):
        total += xs[k]
    # psi(t) is decreasing and piecewise linear; scan for the first order
    # statistic where it turns negative, then solve the linear segment.
    for k in range(n):
        x = xs[k]
        run += x
        psi = alpha * (total - run - (n - k - 1) * x) \
            - (1.0 - alpha) * ((k + 1) * x - run)
        if psi < 0.0:
            if k == 0:
                return xs[0]
            below_sum = run - x
            num = alpha * (total - below_sum) + (1.0 - alpha) * below_sum
            den = alpha * (n - k) + (1.0 - alpha) * k
            return num / den
    return xs[n - 1]


cpdef double expectile_sorted_weighted(const double[::1] xs, const double[::1] ws,
                                       double alpha):
    """Exact alpha-expectile of a weighted discrete law on sorted atoms."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t k
    cdef double w_total = 0.0, s_total = 0.0
    cdef double cw = 0.0, cs = 0.0, x, psi, num, den, below_w, below_s
    if n == 1:
        return xs[0]
    for k in range(n):
        w_total += ws[k]
        s_total += ws[k] * xs[k]
    for k in range(n):
        x = xs[k]
        cw += ws[k]
        cs += ws[k] * x
        psi = alpha * (s_total - cs - (w_total - cw) * x) \
            - (1.0 - alpha) * (cw * x - cs)
        if psi < 0.0:
            if k == 0:
                return xs[0]
            below_w = cw - ws[k]
            below_s = cs - ws[k] * x
            num = alpha * (s_total - below_s) + (1.0 - alpha) * below_s
            den = alpha * (w_total - below_w) + (1.0 - alpha) * below_w
            return num / den
    return xs[n - 1]


cpdef double quantile_sorted(const double[::1] xs, double p):
    """Type-1 sample quantile (left-continuous inverse of the empirical cdf)."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t idx = <Py_ssize_t>ceil(n * p - 1e-9)
    if idx < 1:
        idx = 1
    elif idx > n:
        idx = n
    return xs[idx - 1]


cpdef double gini_sorted(const double[::1] xs) except? -1.0:
    """Sample Gini mean difference from sorted data, O(n)."""
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t k
    cdef double acc = 0.0
    if n < 2:
        raise ValueError("Gini mean difference needs at least two observations")
    for k in range(n):
        acc += (2.0 * (k + 1) - (n + 1.0)) * xs[k]
    return 2.0 * acc / (n * (n - 1.0))
