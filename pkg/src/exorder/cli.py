"""Command-line front end.

Every numeric artifact of the library is regenerated as a machine-readable
file: efficiency tables, the normal-case efficiency milestones, the ASV
curves, the two-curve Lomax case study, and seeded CLT experiments.

Conventions: the resolved configuration is echoed to stderr; stdout (or
``--out``) carries only the table; values print with 3 decimals unless
``--full`` asks for 17 significant digits; exit code 0 on success, 2 on
domain/moment/parse errors, 1 on internal errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import asymptotics, orders, simulation
from .distributions import ScaledBernoulli, parse_spec
from .errors import DomainError, ExorderError, MomentError, SingularityError
from .expectiles import expectile, ier, iqr
from .skewness import skewness_profile
from .version import __version__

_ORDER_CHECKERS = {
    "st": orders.check_st,
    "e": orders.check_expectile_order,
    "cx": orders.check_cx,
    "icx": orders.check_icx,
    "c": orders.check_convex_transform,
    "s": orders.check_s_order,
    "sf": orders.check_sf,
    "disp": orders.check_disp,
    "w-disp": orders.check_w_disp,
    "e-disp": orders.check_e_disp,
    "we-disp": orders.check_we_disp,
    "dil": orders.check_dil,
    "delta-ex": orders.check_delta_ex,
    "mu-d": orders.check_mu_d_crossings,
}


def _fmt(value, full: bool) -> str:
    if value is None:
        return "-"
    return f"{float(value):.17g}" if full else f"{float(value):.3f}"


def _echo_config(args, **extra):
    resolved = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    resolved.update(extra)
    print(f"# exorder {args.command} config: {json.dumps(resolved, default=str)}",
          file=sys.stderr)


def _emit_text(text: str, args):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(header, rows, args, comments=()):
    """Rows of already-formatted strings as CSV, or raw values as JSON."""
    if args.format == "json":
        payload = {"comments": list(comments),
                   "columns": list(header),
                   "rows": [dict(zip(header, r)) for r in rows]}
        _emit_text(json.dumps(payload, indent=2) + "\n", args)
        return
    buf = io.StringIO()
    for comment in comments:
        buf.write(f"# {comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit_text(buf.getvalue(), args)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    model = parse_spec(args.spec)
    alphas = args.alpha or [0.25]
    _echo_config(args, spec=args.spec, alphas=alphas)
    full = args.full
    mean, mad = model.mean, model.mad()
    rows = []
    for a in alphas:
        if not 0.0 < a < 0.5:
            raise DomainError(f"--alpha must lie in (0, 1/2), got {a}")
        e_lo = expectile(model, a)
        e_hi = expectile(model, 1.0 - a)
        if isinstance(model, ScaledBernoulli):
            q_lo = 0.0 if a <= 1.0 - model.p else model.a
            q_hi = 0.0 if 1.0 - a <= 1.0 - model.p else model.a
        else:
            q_lo = float(model.quantile(a))
            q_hi = float(model.quantile(1.0 - a))
        rows.append([_fmt(v, full) for v in
                     (a, e_lo, e_hi, q_lo, q_hi, e_hi - e_lo, q_hi - q_lo, mean, mad)])
    header = ["alpha", "expectile_low", "expectile_high", "quantile_low",
              "quantile_high", "ier", "iqr", "mean", "mad"]
    _emit_rows(header, rows, args)
    return 0


def cmd_skew(args) -> int:
    model = parse_spec(args.spec)
    grid = np.linspace(0.005, 0.495, args.grid)
    _echo_config(args, spec=args.spec)
    profile = skewness_profile(model, grid)
    rows = [[_fmt(a, args.full), _fmt(s_t, args.full), _fmt(s_n, args.full)]
            for a, s_t, s_n in zip(profile.alphas, profile.s2_tilde, profile.s2)]
    _emit_rows(["alpha", "s2_tilde", "s2"], rows, args,
               comments=[f"classification: {profile.classification.value}"])
    return 0


def cmd_order(args) -> int:
    checker = _ORDER_CHECKERS[args.order]
    x, y = parse_spec(args.spec_x), parse_spec(args.spec_y)
    _echo_config(args)
    if args.order == "e-disp" and isinstance(x, ScaledBernoulli):
        if not isinstance(y, ScaledBernoulli):
            raise DomainError("two-point e-disp check needs two bernoulli specs")
        result = orders.check_e_disp_two_point(x, y)
    elif args.order == "mu-d":
        result = checker(x, y)
    else:
        grid = orders.prob_grid(args.grid) if args.grid else None
        result = checker(x, y, grid)
    _emit_text(json.dumps(result.to_dict(), indent=2) + "\n", args)
    return 0


def _asv_row_strings(report, full):
    return [_fmt(v, full) for v in report.as_row()]


def cmd_table1(args) -> int:
    _echo_config(args)
    reports = asymptotics.t_table()
    header = ["dist"] + asymptotics.AsvReport.columns(asymptotics.TABLE_ALPHAS)
    rows = [[rep.spec] + _asv_row_strings(rep, args.full) for rep in reports]
    _emit_rows(header, rows, args)
    return 0


def cmd_table2(args) -> int:
    _echo_config(args)
    reports = asymptotics.t_table()
    columns, sare_rows = asymptotics.sare_table(reports)
    header = ["dist"] + columns + ["best"]
    rows = []
    for row in sare_rows:
        rows.append([row["spec"]]
                    + [_fmt(row["sare"][c], args.full) for c in columns]
                    + [row["best"]])
    _emit_rows(header, rows, args)
    return 0


def cmd_table3(args) -> int:
    _echo_config(args)
    rows = []
    for r in asymptotics.nig_table():
        rows.append([f"{r['alpha']:g}", f"{r['beta']:g}"]
                    + [_fmt(r[k], args.full)
                       for k in ("m3", "m4", "sd", "ier", "mad", "gini", "iqr")])
    header = ["alpha", "beta", "m3", "m4", "sd", "ier0.25", "mad", "gini", "iqr0.25"]
    comment = ("iqr column uses the symmetric-density ASV form evaluated at the "
               "lower quartile; see asymptotics.tau2_iqr for the exact form")
    _emit_rows(header, rows, args, comments=[comment])
    return 0


def cmd_normal_sare(args) -> int:
    _echo_config(args)
    stones = asymptotics.normal_sare_milestones()
    rows = [[key, _fmt(val, args.full)] for key, val in stones.items()]
    _emit_rows(["quantity", "value"], rows, args)
    return 0


def cmd_figure2(args) -> int:
    _echo_config(args)
    curve = asymptotics.normal_asv_curve(np.linspace(0.01, 0.49, args.grid))
    rows = [[_fmt(a, args.full), _fmt(q, args.full), _fmt(e, args.full)]
            for a, q, e in curve]
    _emit_rows(["alpha", "tau2_iqr", "tau2_ier"], rows, args)
    return 0


def cmd_lomax_case(args) -> int:
    """Two-curve case study for the weak-but-not-strong dispersive pair."""
    from .distributions import Lomax
    from .expectiles import expectile_cdf

    x = Lomax(3.0, np.sqrt(3.0))
    y = Lomax(2.0, 1.0)
    _echo_config(args, x=x.spec, y=y.spec, ex=x.mean, ey=y.mean)
    ps = np.linspace(0.005, 0.495, args.grid)
    ier_x = np.array([ier(x, float(p)) for p in ps])
    ier_y = np.array([ier(y, float(p)) for p in ps])
    if not np.all(ier_y - ier_x > 0.0):
        raise ExorderError("interexpectile dominance failed on the case-study grid")
    xs = np.linspace(1e-6, 20.0, 201)
    comp = np.array([expectile(y, float(expectile_cdf(x, t))) - t for t in xs])
    if not np.all(np.diff(comp) > -1e-9):
        raise ExorderError("composite gap curve is not nondecreasing")
    rows1 = [[_fmt(p, args.full), _fmt(a, args.full), _fmt(b, args.full)]
             for p, a, b in zip(ps, ier_x, ier_y)]
    rows2 = [[_fmt(t, args.full), _fmt(c, args.full)] for t, c in zip(xs, comp)]
    if args.out:
        base = args.out.removesuffix(".csv")
        sub = argparse.Namespace(format=args.format, out=f"{base}-ier.csv")
        _emit_rows(["p", "ier_x", "ier_y"], rows1, sub,
                   comments=[f"x={x.spec} y={y.spec} ex={x.mean!r} ey={y.mean!r}"])
        sub = argparse.Namespace(format=args.format, out=f"{base}-composite.csv")
        _emit_rows(["t", "composite_gap"], rows2, sub,
                   comments=["gap(t) = e_y(expectile_cdf_x(t)) - t"])
    else:
        _emit_rows(["p", "ier_x", "ier_y"], rows1, args,
                   comments=[f"x={x.spec} y={y.spec} ex={x.mean!r} ey={y.mean!r}"])
        sys.stdout.write("\n")
        _emit_rows(["t", "composite_gap"], rows2, args,
                   comments=["gap(t) = e_y(expectile_cdf_x(t)) - t"])
    return 0


def cmd_clt(args) -> int:
    if args.config:
        with open(args.config) as fh:
            config = simulation.ExperimentConfig.from_text(fh.read())
    else:
        if not args.model:
            raise DomainError("clt needs --config FILE or --model SPEC")
        config = simulation.ExperimentConfig(
            model_spec=args.model, estimator=args.estimator, alpha=args.alpha,
            n=args.n, replications=args.replications, seed=args.seed)
    _echo_config(args, resolved=config.__dict__)
    result = simulation.run_clt_experiment(config)
    if args.format == "json":
        payload = result.summary()
        payload["estimates"] = result.estimates.tolist()
        _emit_text(json.dumps(payload, indent=2) + "\n", args)
        return 0
    summary = result.summary()
    comments = [f"{k}={summary[k]}" for k in
                ("model", "estimator", "alpha", "n", "replications", "seed",
                 "target", "target_asv", "scaled_variance", "relative_deviation")]
    rows = [[str(i), _fmt(v, True)] for i, v in enumerate(result.estimates)]
    _emit_rows(["replication", "estimate"], rows, args, comments=comments)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exorder",
        description="Expectile-based skewness/dispersion measures, stochastic "
                    "orders, and scale-estimator efficiency tables.")
    parser.add_argument("--version", action="version", version=f"exorder {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this path instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--full", action="store_true",
                       help="print 17 significant digits instead of 3 decimals")

    p = sub.add_parser("eval", help="expectiles, quantiles, IER, IQR, MAD of a spec")
    p.add_argument("spec", help="distribution spec, e.g. 'lomax(3,1.7320508)'")
    p.add_argument("--alpha", type=float, action="append",
                   help="level in (0, 1/2); repeatable (default 0.25)")
    common(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("skew", help="expectile skewness profile and classification")
    p.add_argument("spec")
    p.add_argument("--grid", type=int, default=99, help="number of levels")
    common(p)
    p.set_defaults(func=cmd_skew)

    p = sub.add_parser("order", help="run one stochastic-order checker")
    p.add_argument("order", choices=sorted(_ORDER_CHECKERS))
    p.add_argument("spec_x")
    p.add_argument("spec_y")
    p.add_argument("--grid", type=int, help="override the number of grid levels")
    common(p)
    p.set_defaults(func=cmd_order)

    for name, func, help_text in (
            ("table1", cmd_table1, "standardized ASVs for the t family"),
            ("table2", cmd_table2, "sARE against the best estimator, t family"),
            ("table3", cmd_table3, "standardized ASVs for standardized NIG models"),
            ("normal-sare", cmd_normal_sare, "normal-case efficiency milestones")):
        p = sub.add_parser(name, help=help_text)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("figure2", help="normal-case standardized ASV curves")
    p.add_argument("--grid", type=int, default=97)
    common(p)
    p.set_defaults(func=cmd_figure2)

    p = sub.add_parser("lomax-case", help="weak-vs-strong dispersive case study")
    p.add_argument("--grid", type=int, default=99)
    common(p)
    p.set_defaults(func=cmd_lomax_case)

    p = sub.add_parser("clt", help="seeded CLT experiment for one estimator")
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--model", help="distribution spec")
    p.add_argument("--estimator", choices=simulation.ESTIMATORS, default="ier")
    p.add_argument("--alpha", type=float, default=0.25)
    p.add_argument("--n", type=int, default=20000)
    p.add_argument("--replications", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_clt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, MomentError, SingularityError) as exc:
        print(f"exorder: {exc}", file=sys.stderr)
        return 2
    except ExorderError as exc:
        print(f"exorder: internal error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"exorder: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
