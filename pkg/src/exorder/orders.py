"""Grid-based numerical checkers for stochastic orders.

These are evidence generators, not proofs: each checker evaluates its
defining inequality on a grid and returns an :class:`OrderVerdict` that
HOLDS (no violation beyond tolerance anywhere), FAILS (with a witness
point), or is INCONCLUSIVE (borderline: sub-tolerance positive excess on
more than 5% of the grid).

Tolerances are relative and scaled by a local spread so the verdicts are
invariant under rescaling of both models.  Grids mix a linear core with
geometric tails down to 1e-9 (1e-10 for expectile levels) so that
single-crossing violations hiding deep in a tail are still seen.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .distributions import AffineModel, ScaledBernoulli
from .errors import DomainError
from .expectiles import expectile, iqr
from .skewness import big_s_tilde

__all__ = [
    "Verdict", "Witness", "OrderVerdict", "CrossingReport", "prob_grid",
    "check_st", "check_expectile_order", "check_cx", "check_icx",
    "check_convex_transform", "check_s_order", "check_sf",
    "check_mu_d_crossings", "check_disp", "check_w_disp", "check_e_disp",
    "check_we_disp", "check_dil", "check_delta_ex",
    "check_e_disp_two_point",
]

RTOL = 1e-7


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Witness:
    """Grid point violating the defining inequality, with both sides."""

    point: tuple
    lhs: float
    rhs: float


@dataclass(frozen=True)
class OrderVerdict:
    order: str
    verdict: Verdict
    witness: Optional[Witness]
    grid_spec: str
    tolerance: float
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict is Verdict.FAILS

    def to_dict(self):
        d = {
            "order": self.order,
            "verdict": self.verdict.value,
            "grid": self.grid_spec,
            "tolerance": self.tolerance,
        }
        if self.witness is not None:
            d["witness"] = {"point": list(self.witness.point),
                            "lhs": self.witness.lhs, "rhs": self.witness.rhs}
        if self.note:
            d["note"] = self.note
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


@dataclass(frozen=True)
class CrossingReport:
    """Sign-change counts of the standardized cdf difference.

    Counts are grid-resolution dependent; single crossings on each side of
    zero together with the center condition constitute numerical evidence
    for the mean/MAD skewness order.
    """

    left_crossings: int
    right_crossings: int
    center_ok: bool
    grid_spec: str

    @property
    def evidence(self) -> bool:
        return self.left_crossings == 1 and self.right_crossings == 1 and self.center_ok

    def to_dict(self):
        return {"left_crossings": self.left_crossings,
                "right_crossings": self.right_crossings,
                "center_ok": self.center_ok, "grid": self.grid_spec,
                "evidence": self.evidence}


def prob_grid(n: int = 257, tail: float = 1e-9) -> np.ndarray:
    """Probability levels: linear core plus geometric tails down to ``tail``."""
    n_tail = max(n // 5, 4)
    n_core = max(n - 2 * n_tail, 3)
    tails = np.geomspace(tail, 0.01, n_tail)
    core = np.linspace(0.01, 0.99, n_core)
    return np.unique(np.concatenate([tails, core, 1.0 - tails]))


def _grid_spec(levels: np.ndarray, kind: str) -> str:
    return f"{kind}:{levels.size}[{levels[0]:.3g},{levels[-1]:.6g}]"


def _verdict(order, lhs, rhs, tol, points, grid_spec, note="") -> OrderVerdict:
    """Assemble a verdict for the pointwise inequality ``lhs <= rhs``."""
    lhs = np.asarray(lhs, dtype=float).reshape(-1)
    rhs = np.broadcast_to(np.asarray(rhs, dtype=float), lhs.shape).reshape(-1)
    tol = np.broadcast_to(np.asarray(tol, dtype=float), lhs.shape).reshape(-1)
    viol = lhs - rhs
    excess = viol - tol
    worst = int(np.argmax(excess))
    worst_tol = float(tol[worst])
    if excess[worst] > 0.0:
        pt = points[worst]
        witness = Witness(tuple(np.atleast_1d(pt).tolist()),
                          lhs=float(lhs[worst]), rhs=float(rhs[worst]))
        return OrderVerdict(order, Verdict.FAILS, witness, grid_spec, worst_tol, note)
    if np.mean(viol > 0.0) > 0.05:
        return OrderVerdict(order, Verdict.INCONCLUSIVE, None, grid_spec, worst_tol,
                            note or "sub-tolerance positive excess on >5% of grid")
    return OrderVerdict(order, Verdict.HOLDS, None, grid_spec, worst_tol, note)


def _pair_scale(x, y) -> float:
    return max(iqr(x, 0.25), iqr(y, 0.25))


# ---------------------------------------------------------------------------
# location-style orders
# ---------------------------------------------------------------------------

def check_st(x, y, grid=None) -> OrderVerdict:
    """Usual stochastic order via the quantile form ``q_X(p) <= q_Y(p)``."""
    levels = prob_grid() if grid is None else np.asarray(grid, dtype=float)
    qx = np.asarray(x.quantile(levels), dtype=float)
    qy = np.asarray(y.quantile(levels), dtype=float)
    scale = np.maximum(_pair_scale(x, y), np.maximum(np.abs(qx), np.abs(qy)))
    points = [(float(p),) for p in levels]
    return _verdict("st", qx, qy, RTOL * scale, points, _grid_spec(levels, "p"))


def check_expectile_order(x, y, grid=None) -> OrderVerdict:
    """Expectile location order ``e_X(a) <= e_Y(a)`` on a level grid."""
    levels = prob_grid(257, 1e-10) if grid is None else np.asarray(grid, dtype=float)
    ex = np.array([expectile(x, float(a)) for a in levels])
    ey = np.array([expectile(y, float(a)) for a in levels])
    scale = np.maximum(_pair_scale(x, y), np.maximum(np.abs(ex), np.abs(ey)))
    points = [(float(p),) for p in levels]
    return _verdict("expectile", ex, ey, RTOL * scale, points, _grid_spec(levels, "alpha"))


# ---------------------------------------------------------------------------
# convex-type orders (stop-loss comparisons)
# ---------------------------------------------------------------------------

def _stop_loss_grid(x, y, levels):
    tx = np.asarray(x.quantile(levels), dtype=float)
    ty = np.asarray(y.quantile(levels), dtype=float)
    return np.unique(np.concatenate([tx, ty]))


def check_icx(x, y, grid=None) -> OrderVerdict:
    """Increasing convex order: ``pi_X(t) <= pi_Y(t)`` for all t."""
    levels = prob_grid() if grid is None else np.asarray(grid, dtype=float)
    ts = _stop_loss_grid(x, y, levels)
    px = np.asarray(x.stop_loss(ts), dtype=float)
    py = np.asarray(y.stop_loss(ts), dtype=float)
    scale = np.maximum(_pair_scale(x, y), np.maximum(px, py))
    points = [(float(t),) for t in ts]
    return _verdict("icx", px, py, RTOL * scale, points, _grid_spec(levels, "p"))


def check_cx(x, y, grid=None) -> OrderVerdict:
    """Convex order: equal means plus the stop-loss comparison."""
    scale = _pair_scale(x, y)
    mx, my = x.mean, y.mean
    if abs(mx - my) > RTOL * max(scale, abs(mx), abs(my)):
        witness = Witness((float("nan"),), lhs=mx, rhs=my)
        return OrderVerdict("cx", Verdict.FAILS, witness, "means", RTOL,
                            "means differ, convex order impossible")
    inner = check_icx(x, y, grid)
    return OrderVerdict("cx", inner.verdict, inner.witness, inner.grid_spec,
                        inner.tolerance, inner.note)


def check_dil(x, y, grid=None) -> OrderVerdict:
    """Dilation order: centered stop-loss comparison ``X - EX <=_cx Y - EY``."""
    levels = prob_grid() if grid is None else np.asarray(grid, dtype=float)
    mx, my = x.mean, y.mean
    tx = np.asarray(x.quantile(levels), dtype=float) - mx
    ty = np.asarray(y.quantile(levels), dtype=float) - my
    ts = np.unique(np.concatenate([tx, ty]))
    px = np.asarray(x.stop_loss(ts + mx), dtype=float)
    py = np.asarray(y.stop_loss(ts + my), dtype=float)
    scale = np.maximum(_pair_scale(x, y), np.maximum(px, py))
    points = [(float(t),) for t in ts]
    return _verdict("dil", px, py, RTOL * scale, points, _grid_spec(levels, "p"))


# ---------------------------------------------------------------------------
# skewness orders
# ---------------------------------------------------------------------------

def check_convex_transform(x, y, grid=None) -> OrderVerdict:
    """Van Zwet order: convexity of ``q_Y o F_X`` probed by slope monotonicity.

    At the abscissas ``q_X(p)`` the composite equals ``q_Y(p)``, so the
    probe needs only the two quantile functions.
    """
    levels = prob_grid(257, 1e-6) if grid is None else np.asarray(grid, dtype=float)
    qx = np.asarray(x.quantile(levels), dtype=float)
    qy = np.asarray(y.quantile(levels), dtype=float)
    slopes = np.diff(qy) / np.diff(qx)
    tol = RTOL * np.maximum(slopes[:-1], slopes[1:])
    points = [(float(p),) for p in levels[1:-1]]
    return _verdict("convex-transform", slopes[:-1], slopes[1:], tol, points,
                    _grid_spec(levels, "p"))


def _standardize(model):
    d = model.mad()
    return AffineModel(model, 1.0 / d, -model.mean / d)


def check_s_order(x, y, grid=None) -> OrderVerdict:
    """Mean/MAD-standardized one-sided convex comparisons.

    Uses the stop-loss identities for the partial cdf integrals: on the
    left, ``int_(-inf)^t F = pi(t) + t`` for a centered standardized model;
    on the right the survival integral is ``pi(t)`` itself.
    """
    sx, sy = _standardize(x), _standardize(y)
    levels = prob_grid() if grid is None else np.asarray(grid, dtype=float)
    ts = _stop_loss_grid(sx, sy, levels)
    left = ts[ts <= 0.0]
    right = ts[ts >= 0.0]
    plx = np.asarray(sx.stop_loss(left), dtype=float) + left
    ply = np.asarray(sy.stop_loss(left), dtype=float) + left
    prx = np.asarray(sx.stop_loss(right), dtype=float)
    pry = np.asarray(sy.stop_loss(right), dtype=float)
    # left: integral of F for X must dominate Y's; right: survival integral reversed
    lhs = np.concatenate([ply, prx])
    rhs = np.concatenate([plx, pry])
    local = np.concatenate([np.maximum(np.abs(plx), np.abs(ply)),
                            np.maximum(prx, pry)])
    tol = RTOL * np.maximum(local, 1.0)  # standardized models have MAD 1
    points = [(float(t),) for t in np.concatenate([left, right])]
    return _verdict("s", lhs, rhs, tol, points, _grid_spec(levels, "p"))


def check_sf(x, y, grid=None) -> OrderVerdict:
    """Stop-loss asymmetry order: ``S~_X(t) <= S~_Y(t)`` on a MAD-unit grid."""
    ts = np.geomspace(0.01, 10.0, 60) if grid is None else np.asarray(grid, dtype=float)
    dx, dy = x.mad(), y.mad()
    sx = np.array([big_s_tilde(x, float(t), d=dx) for t in ts])
    sy = np.array([big_s_tilde(y, float(t), d=dy) for t in ts])
    points = [(float(t),) for t in ts]
    # S-values are bounded by 1, so the natural scale is absolute
    return _verdict("sf", sx, sy, RTOL, points, _grid_spec(ts, "t"))


def check_mu_d_crossings(x, y, n_grid: int = 2001) -> CrossingReport:
    """Count crossings of the mean/MAD-standardized cdfs on each side of 0."""
    mx, my = x.mean, y.mean
    dx, dy = x.mad(), y.mad()
    lo = min((float(x.quantile(1e-6)) - mx) / dx, (float(y.quantile(1e-6)) - my) / dy)
    hi = max((float(x.quantile(1.0 - 1e-6)) - mx) / dx,
             (float(y.quantile(1.0 - 1e-6)) - my) / dy)

    def crossings(zs):
        diff = (np.asarray(x.cdf(dx * zs + mx), dtype=float)
                - np.asarray(y.cdf(dy * zs + my), dtype=float))
        signs = np.sign(np.where(np.abs(diff) <= 1e-12, 0.0, diff))
        signs = signs[signs != 0.0]
        return int(np.sum(signs[1:] != signs[:-1])) if signs.size else 0

    left = crossings(np.linspace(lo, 0.0, n_grid, endpoint=False))
    right = crossings(np.linspace(hi / n_grid, hi, n_grid))
    center_ok = bool(float(x.cdf(mx)) <= float(y.cdf(my)) + 1e-12)
    return CrossingReport(left, right, center_ok, f"z:{n_grid}[{lo:.3g},{hi:.3g}]")


# ---------------------------------------------------------------------------
# dispersion orders
# ---------------------------------------------------------------------------

def _pairs(levels, weak: bool):
    """(u, v) index pairs with u < v, restricted to u <= 1/2 <= v if weak."""
    li, vi = np.triu_indices(levels.size, k=1)
    if weak:
        keep = (levels[li] <= 0.5) & (levels[vi] >= 0.5)
        li, vi = li[keep], vi[keep]
    return li, vi


def _spread_verdict(order, levels, fx, fy, li, vi, scale_floor) -> OrderVerdict:
    dx = fx[vi] - fx[li]
    dy = fy[vi] - fy[li]
    tol = RTOL * np.maximum(scale_floor, np.maximum(dx, dy))
    points = list(zip(levels[li].tolist(), levels[vi].tolist()))
    return _verdict(order, dx, dy, tol, points, _grid_spec(levels, "uv"))


def _dispersive(order, x, y, grid, weak, expectiles):
    tail = 1e-10 if expectiles else 1e-9
    levels = prob_grid(65, tail) if grid is None else np.asarray(grid, dtype=float)
    if expectiles:
        fx = np.array([expectile(x, float(a)) for a in levels])
        fy = np.array([expectile(y, float(a)) for a in levels])
    else:
        fx = np.asarray(x.quantile(levels), dtype=float)
        fy = np.asarray(y.quantile(levels), dtype=float)
    li, vi = _pairs(levels, weak)
    return _spread_verdict(order, levels, fx, fy, li, vi, _pair_scale(x, y))


def check_disp(x, y, grid=None) -> OrderVerdict:
    """Dispersive order: all quantile spreads of X dominated by Y's."""
    return _dispersive("disp", x, y, grid, weak=False, expectiles=False)


def check_w_disp(x, y, grid=None, *, method: str = "pairs") -> OrderVerdict:
    """Weak dispersive order (spreads straddling the median).

    ``method='median_anchor'`` uses the equivalent one-sided comparison of
    quantile gaps against the median gap.
    """
    if method == "pairs":
        return _dispersive("w-disp", x, y, grid, weak=True, expectiles=False)
    if method != "median_anchor":
        raise DomainError(f"unknown w-disp method {method!r}")
    levels = prob_grid(65, 1e-9) if grid is None else np.asarray(grid, dtype=float)
    qx = np.asarray(x.quantile(levels), dtype=float)
    qy = np.asarray(y.quantile(levels), dtype=float)
    med_gap = float(y.quantile(0.5)) - float(x.quantile(0.5))
    gap = qy - qx
    lhs = np.where(levels <= 0.5, gap, med_gap)
    rhs = np.where(levels <= 0.5, med_gap, gap)
    scale = np.maximum(_pair_scale(x, y), np.abs(gap) + abs(med_gap))
    points = [(float(p),) for p in levels]
    return _verdict("w-disp", lhs, rhs, RTOL * scale, points,
                    _grid_spec(levels, "p"), note="median-anchored form")


def check_e_disp(x, y, grid=None) -> OrderVerdict:
    """Expectile dispersive order: all expectile spreads dominated."""
    return _dispersive("e-disp", x, y, grid, weak=False, expectiles=True)


def check_we_disp(x, y, grid=None) -> OrderVerdict:
    """Weak expectile dispersive order (spreads straddling level 1/2)."""
    return _dispersive("we-disp", x, y, grid, weak=True, expectiles=True)


def check_delta_ex(x, y, grid=None) -> OrderVerdict:
    """Interexpectile-range order: ``E_a(X) <= E_a(Y)`` for a in (0, 1/2)."""
    levels = (prob_grid(65, 1e-10) if grid is None else np.asarray(grid, dtype=float))
    levels = levels[levels < 0.5]
    points = [(float(a),) for a in levels]
    ex = np.array([expectile(x, 1.0 - float(a)) - expectile(x, float(a)) for a in levels])
    ey = np.array([expectile(y, 1.0 - float(a)) - expectile(y, float(a)) for a in levels])
    tol = RTOL * np.maximum(_pair_scale(x, y), np.maximum(ex, ey))
    return _verdict("delta-ex", ex, ey, tol, points, _grid_spec(levels, "alpha"))


def check_e_disp_two_point(x: ScaledBernoulli, y: ScaledBernoulli,
                           n_grid: int = 257) -> OrderVerdict:
    """Expectile dispersive order for two scaled Bernoulli laws.

    Uses the closed form of ``e_Y o F_breve_X`` on [0, a_X]; the order is
    equivalent to its derivative being >= 1 there.
    """
    c = y.p * (1.0 - x.p) * y.a
    d = x.p * (1.0 - y.p) * x.a
    e = y.p - x.p
    ts = np.linspace(0.0, x.a, n_grid)
    deriv = c * d / np.square(d + e * ts)
    points = [(float(t),) for t in ts]
    return _verdict("e-disp", np.ones_like(ts), deriv, RTOL, points,
                    f"t:{n_grid}[0,{x.a:g}]",
                    note="two-point closed form; derivative criterion")
