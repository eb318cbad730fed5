"""Thin wrappers around scipy's adaptive quadrature.

All expectations in this package are integrals of piecewise-smooth
integrands (kinks at expectiles, quantiles or the mean).  Splitting the
range at every kink restores the fast convergence of the underlying
QUADPACK rules, so every helper here takes explicit split points.
"""

import numpy as np
from scipy import integrate

DEFAULT_ABS_TOL = 1e-11
DEFAULT_REL_TOL = 1e-10


def quad_split(f, a, b, points=(), *, epsabs=DEFAULT_ABS_TOL, epsrel=DEFAULT_REL_TOL,
               limit=200):
    """Integrate ``f`` over ``(a, b)`` splitting at interior ``points``.

    Handles infinite endpoints by integrating each unbounded piece
    separately (scipy's ``points`` argument only supports finite ranges).
    """
    pts = sorted(p for p in points if a < p < b and np.isfinite(p))
    edges = [a] + pts + [b]
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if lo == hi:
            continue
        val, _ = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit)
        total += val
    return total


def expectation(model, g, points=(), *, epsabs=DEFAULT_ABS_TOL, epsrel=DEFAULT_REL_TOL):
    """E[g(X)] by adaptive quadrature of ``g * pdf`` over the support."""
    lo, hi = model.support
    pts = list(points)
    if model.has_mean:
        pts.append(model.mean)
    return quad_split(lambda x: g(x) * model.pdf(x), lo, hi, pts,
                      epsabs=epsabs, epsrel=epsrel)
