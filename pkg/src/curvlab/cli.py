"""Command-line front end: ``report``, ``verify``, ``roter-fit`` and ``hyper``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import hypersurface as hs
from . import identities
from .chartfile import ChartParseError, load_chart, load_samples
from .charts import (
    GuardError,
    GuardRegionError,
    MetricChart,
    builtin_chart,
    constant_curvature,
    evaluate_package,
    rn_desitter,
    sample_points,
    sphere_product,
    warped_1xN,
    warped_2xN,
)
from .checks import PASS_TOL, Sample, run_checks, select, summarize
from .classify import VERDICTS, classify_point, roter_closed_forms, roter_fit
from .fitting import linear_combination_fit

SCHEMA = 1
DEFAULT_SEED = 0
DATA = Path(__file__).resolve().parent / "data"
DEFAULT_CHART_FILES = ("tilted3.chart", "lorentz4.chart")
DEFAULT_SAMPLE_FILES = ("two_eigenvalue.hyp", "u_h.hyp")


class UsageError(Exception):
    """Bad input that should end the run with exit code 2."""


# -- configuration ----------------------------------------------------------

def resolve_seed(args) -> int:
    """Explicit ``--seed`` first, then ``CURVLAB_SEED``, then the fixed default."""
    if args.seed is not None:
        return args.seed
    env = os.environ.get("CURVLAB_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"CURVLAB_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


CHART_PARAMS = {
    "constant-curvature": ("n", "kappa"),
    "sphere-product": ("p", "r1", "r2", "n", "q"),
    "warped-1xN": ("n", "F", "a", "b", "r2", "base"),
    "warped-2xN": ("n", "F", "a", "b", "r1", "r2", "base"),
    "rn-desitter": ("M", "Q", "Lambda", "exponent"),
    "flat": ("n",),
}


def chart_from_args(args) -> MetricChart | None:
    if args.chart_file:
        try:
            return load_chart(args.chart_file)
        except OSError as exc:
            raise UsageError(f"cannot read chart file: {exc}") from None
    if not args.chart:
        return None
    if args.chart not in CHART_PARAMS:
        raise UsageError(f"unknown chart {args.chart!r}; choose from {sorted(CHART_PARAMS)}")
    params = {k: getattr(args, k) for k in CHART_PARAMS[args.chart] if getattr(args, k) is not None}
    try:
        return builtin_chart(args.chart, **params)
    except (TypeError, ValueError, GuardRegionError) as exc:
        raise UsageError(str(exc)) from None


def chart_label(chart: MetricChart) -> str:
    items = [f"{k}={_fmt_param(v)}" for k, v in sorted(chart.params.items()) if k != "band"]
    return f"{chart.name}({','.join(items)})" if items else chart.name


def _fmt_param(v) -> str:
    return f"{v:g}" if isinstance(v, float) else str(v)


def chart_samples(chart: MetricChart, points: int, seed: int) -> list:
    label = chart_label(chart)
    try:
        pts = sample_points(chart, points, seed)
    except GuardRegionError as exc:
        raise UsageError(f"{label}: {exc}") from None
    return [Sample(label, evaluate_package(chart, p), chart.tags) for p in pts]


def default_charts() -> list:
    charts = [
        constant_curvature(4, 12.0),
        sphere_product(2, 1.0, 2.0, n=4),
        sphere_product(2, 1.0, 3.0, n=5),
        sphere_product(1, 1.0, 3.0, n=4),
        warped_1xN(4),
        warped_2xN(4),
        warped_2xN(5, F="quadratic", base="flat"),
        warped_2xN(4, base="lorentzian"),
        rn_desitter(1.0, 0.5, 0.3),
        rn_desitter(1.0, 0.5, 0.0),
    ]
    charts += [load_chart(DATA / f) for f in DEFAULT_CHART_FILES]
    return charts


def ecs_samples(seed: int, per_dim: int = 3) -> list:
    out = []
    for n in (4, 5):
        for k in range(per_dim):
            m, S, F = identities.synth_ecs_input(n, seed * 1000 + k)
            out.append(Sample(f"ecs-model(n={n})", identities.ecs_package(m, S, F, point=(float(k),)), frozenset({"ecs"}), {"F": F}))
    return out


def hyper_samples(paths=None) -> list:
    paths = list(paths) if paths else [DATA / f for f in DEFAULT_SAMPLE_FILES]
    out = []
    for path in paths:
        try:
            entries = load_samples(path)
        except OSError as exc:
            raise UsageError(f"cannot read sample file: {exc}") from None
        for smp in entries:
            out.append(hs.hyper_sample(hs.from_sample(smp)))
    return out


def default_suite(points: int, seed: int) -> list:
    samples = []
    for chart in default_charts():
        samples += chart_samples(chart, points, seed)
    samples += ecs_samples(seed)
    samples += hyper_samples()
    samples += [hs.hyper_sample(hd, label="random-H") for _, hd in hs.theorem_71_samples(40, seed)]
    return samples


# -- output -----------------------------------------------------------------

def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    return x


def to_json(payload: dict) -> str:
    return json.dumps(_plain(payload), sort_keys=True, indent=2, allow_nan=False) + "\n"


def to_csv(rows: list) -> str:
    rows = [_plain(r) for r in rows]
    cols = sorted({k for r in rows for k in r})
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.3e}" if (v != 0 and (abs(v) < 1e-3 or abs(v) >= 1e5)) else f"{v:.6g}"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_cell(x) for x in v) + ")"
    return str(v)


def to_table(rows: list, cols: list) -> str:
    cells = [[_cell(_plain(r.get(c))) if not isinstance(r.get(c), float) else _cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def emit(args, payload: dict, rows: list, cols: list, footer: str = "") -> None:
    if args.format == "json":
        text = to_json(payload)
    elif args.format == "csv":
        text = to_csv(rows)
    else:
        text = to_table(rows, cols) + footer
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------

def cmd_report(args) -> int:
    chart = chart_from_args(args)
    if chart is None:
        raise UsageError("report needs --chart or --chart-file")
    seed = resolve_seed(args)
    rows = []
    for s in chart_samples(chart, args.points, seed):
        rep = classify_point(s.pkg, tol=args.tol)
        d = rep.to_dict()
        d["kappa"] = float(s.pkg.kappa)
        rows.append(d)
    counts = Counter(r["verdict"] for r in rows)
    summary = {v: counts.get(v, 0) for v in VERDICTS}
    payload = {"schema": SCHEMA, "command": "report", "chart": chart_label(chart), "seed": seed, "points": rows, "summary": summary}
    footer = "summary: " + ", ".join(f"{k} {v}" for k, v in summary.items() if v) + "\n"
    emit(args, payload, rows, ["point", "verdict", "kappa", "quasi_einstein", "roter", "roter_residual"], footer)
    return 0


def _verify_samples(args, seed: int) -> list:
    chart = chart_from_args(args)
    if chart is None and not args.samples:
        samples = default_suite(args.points, seed)
    else:
        samples = chart_samples(chart, args.points, seed) if chart is not None else []
        if args.samples:
            samples += hyper_samples(args.samples)
    if args.chart_dim is not None:
        samples = [s for s in samples if s.n == args.chart_dim]
    return samples


def cmd_verify(args) -> int:
    seed = resolve_seed(args)
    samples = _verify_samples(args, seed)
    checks = select(args.only, args.skip)
    if not checks:
        raise UsageError("no checks match --only/--skip")
    rows = run_checks(samples, checks, tol=args.tol)
    table = rows if args.per_point else summarize(rows)
    evaluated = [r for r in table if r["skipped"] is None] if args.per_point else table
    failing = [r for r in evaluated if not r["pass"]]
    ok = bool(evaluated) and not failing
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "seed": seed,
        "points_per_chart": args.points,
        "passed": ok,
        "checks": len(checks),
        "rows": table,
        "failing": failing,
    }
    n_pass = sum(1 for r in evaluated if r["pass"])
    footer = f"{n_pass}/{len(evaluated)} rows pass\n"
    emit(args, payload, table, ["check", "chart", "points", "residual", "pass"] if not args.per_point else ["check", "chart", "point", "residual", "pass", "skipped"], footer)
    if not evaluated:
        print("no applicable checks were evaluated", file=sys.stderr)
    for r in failing:
        print(f"FAIL {r['check']} on {r['chart']}: residual {_cell(r['residual'])}", file=sys.stderr)
    return 0 if ok else 1


def rn_reference(r: float, M: float, Q: float, Lambda: float) -> dict:
    """Reference closed forms for the Roter coefficients of the charged (anti-)de Sitter metric.

    ``mu`` and ``eta`` are compared against the fit; ``phi_candidate`` is an
    uncertain closed form reported for information only.
    """
    mu = 0.5 * (Q**4 + 3 * Q**2 * Lambda * r**4 - 3 * Lambda * M * r**5) / Q**4
    eta = (3 * Q**6 + 4 * Q**4 * Lambda * r**4 - 3 * Q**4 * M * r + 9 * Q**2 * Lambda**2 * r**8 - 9 * Lambda**2 * M * r**9) / (12 * r**4 * Q**4)
    phi = 1.5 * (Q**2 - M * r) * r**4 / Q**4
    return {"mu": mu, "eta": eta, "phi_candidate": phi}


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def roter_fit_row(pkg, chart: MetricChart | None = None, tol: float = PASS_TOL) -> dict:
    """Fitted Roter coefficients at one point with closed-form and reference-formula cross-checks."""
    n = pkg.n
    fit = roter_fit(pkg)
    phi, mu, eta = (float(c) for c in fit.coeffs)
    row = {"point": pkg.point, "phi": phi, "mu": mu, "eta": eta, "residual": fit.residual, "holds": bool(fit.residual < tol)}
    if phi != 0 and math.isfinite(phi):
        cf = roter_closed_forms(n, pkg.kappa, phi, mu, eta)
        pe = linear_combination_fit(pkg.S2, [pkg.S, pkg.g])
        pseudo = classify_point(pkg).pseudo
        fitted = {"alpha1": float(pe.coeffs[0]), "alpha2": float(pe.coeffs[1]),
                  "L_R": pseudo["L_R"].value, "L": pseudo["L"].value, "L_C": pseudo["L_C"].value}
        row["closed_forms"] = {
            k: {"closed": cf[k], "fitted": fitted[k], "abs_diff": None if fitted[k] is None else abs(cf[k] - fitted[k]) / (1 + abs(cf[k]))}
            for k in ("alpha1", "alpha2", "L_R", "L", "L_C")
        }
    if chart is not None and chart.name == "rn-desitter":
        M, Q, Lam = chart.params["M"], chart.params["Q"], chart.params["Lambda"]
        pr = rn_reference(pkg.point[1], M, Q, Lam)
        row["reference"] = {
            "mu": pr["mu"], "mu_rel_err": _rel(mu, pr["mu"]),
            "eta": pr["eta"], "eta_rel_err": _rel(eta, pr["eta"]), "eta_ratio": eta / pr["eta"],
            "phi_candidate": pr["phi_candidate"], "phi_ratio": phi / pr["phi_candidate"],
        }
    return row


def cmd_roter_fit(args) -> int:
    chart = chart_from_args(args)
    if chart is None:
        raise UsageError("roter-fit needs --chart or --chart-file")
    seed = resolve_seed(args)
    tol = PASS_TOL if args.tol is None else args.tol
    rows = [roter_fit_row(s.pkg, chart, tol) for s in chart_samples(chart, args.points, seed)]
    flat = []
    for r in rows:
        f = {k: r[k] for k in ("point", "phi", "mu", "eta", "residual")}
        if "reference" in r:
            f.update({"mu_rel_err": r["reference"]["mu_rel_err"], "eta_ratio": r["reference"]["eta_ratio"], "phi_ratio": r["reference"]["phi_ratio"]})
        if "closed_forms" in r:
            f["closed_form_max_diff"] = max((v["abs_diff"] for v in r["closed_forms"].values() if v["abs_diff"] is not None), default=None)
        flat.append(f)
    ok = all(r["holds"] for r in rows)
    payload = {"schema": SCHEMA, "command": "roter-fit", "chart": chart_label(chart), "seed": seed, "points": rows, "holds": ok}
    cols = list(flat[0]) if flat else []
    emit(args, payload, flat, cols)
    return 0 if ok else 1


def cmd_hyper(args) -> int:
    seed = resolve_seed(args)
    files = args.samples or ([args.file] if args.file else None)
    tables = [hs.check_hyp_identities(s.extras["hd"], only=args.only, tol=args.tol) for s in hyper_samples(files)]
    t71 = hs.theorem_71_table(args.t71_samples, seed) if args.t71_samples > 0 else []
    mis = [r["name"] for r in t71 if not r["umbilical"] and r["quasi_umbilical"] != r["weyl_vanishes"]]
    rows = []
    for t in tables:
        for r in t["rows"]:
            rows.append({"sample": t["sample"], "check": r["check"], "residual": r["residual"], "pass": r["pass"], "skipped": r["skipped"]})
    evaluated = [r for r in rows if r["skipped"] is None]
    ok = all(r["pass"] for r in evaluated) and not mis
    payload = {
        "schema": SCHEMA,
        "command": "hyper",
        "seed": seed,
        "samples": tables,
        "theorem_7_1": {"samples": len(t71), "misclassified": mis, "kinds": dict(Counter(r["kind"] for r in t71))},
        "passed": ok,
    }
    footer = f"theorem-7.1 biconditional: {len(t71)} samples, {len(mis)} misclassified\n"
    emit(args, payload, rows, ["sample", "check", "residual", "pass", "skipped"], footer)
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------

def _add_chart_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("chart")
    g.add_argument("--chart", help=f"builtin chart: {', '.join(sorted(CHART_PARAMS))}")
    g.add_argument("--chart-file", help="chart definition file")
    g.add_argument("--n", type=int, help="dimension")
    g.add_argument("--kappa", type=float, help="scalar curvature (constant-curvature)")
    g.add_argument("--p", type=int, help="first factor dimension (sphere-product)")
    g.add_argument("--q", type=int, help="second factor dimension (sphere-product)")
    g.add_argument("--r1", type=float, help="first radius")
    g.add_argument("--r2", type=float, help="second radius")
    g.add_argument("--M", type=float, help="mass (rn-desitter)")
    g.add_argument("--Q", type=float, help="charge (rn-desitter)")
    g.add_argument("--Lambda", type=float, help="cosmological constant (rn-desitter)")
    g.add_argument("--exponent", type=int, help="power of r in the cosmological term (rn-desitter)")
    g.add_argument("--warp", "--F", dest="F", help="warping function family")
    g.add_argument("--a", type=float, help="warping coefficient a")
    g.add_argument("--b", type=float, help="warping coefficient b")
    g.add_argument("--base", help="base of a warped product")


def _add_common(p: argparse.ArgumentParser, points: bool = True) -> None:
    if points:
        p.add_argument("--points", type=int, default=10, help="sample points per chart (default 10)")
    p.add_argument("--seed", type=int, default=None, help=f"sampling seed (default $CURVLAB_SEED or {DEFAULT_SEED})")
    p.add_argument("--tol", type=float, default=None, help="pass tolerance override")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvlab", description="Pointwise curvature identities and classification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", help="classify sample points of a chart")
    _add_chart_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", help="run the identity checks")
    _add_chart_args(p)
    _add_common(p)
    p.add_argument("--samples", action="append", help="hypersurface sample file (repeatable)")
    p.add_argument("--only", action="append", help="run checks whose id starts with this prefix (repeatable)")
    p.add_argument("--skip", action="append", help="skip checks whose id starts with this prefix (repeatable)")
    p.add_argument("--chart-dim", type=int, help="keep only samples of this dimension")
    p.add_argument("--per-point", action="store_true", help="one row per point instead of per chart")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roter-fit", help="fit the Roter coefficients at sample points")
    _add_chart_args(p)
    _add_common(p)
    p.set_defaults(func=cmd_roter_fit)

    p = sub.add_parser("hyper", help="hypersurface identity table")
    p.add_argument("file", nargs="?", help="hypersurface sample file (default: packaged samples)")
    p.add_argument("--samples", action="append", help="additional sample file (repeatable)")
    p.add_argument("--only", action="append", help="check id prefix (repeatable)")
    p.add_argument("--t71-samples", type=int, default=200, help="seeded samples for the Weyl-vanishing biconditional")
    _add_common(p, points=False)
    p.set_defaults(func=cmd_hyper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "points", 1) < 1:
        parser.error("--points must be >= 1")
    if args.tol is not None and not args.tol > 0:
        parser.error("--tol must be positive")
    if args.command == "hyper" and args.file and args.samples:
        args.samples = [args.file] + args.samples
    try:
        return args.func(args)
    except ChartParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, GuardError, GuardRegionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
