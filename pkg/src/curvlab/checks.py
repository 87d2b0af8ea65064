"""Registry of residual checks and the suite runner."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .classify import ClassificationReport, classify_point
from .fitting import sup
from .package import CurvaturePackage

PASS_TOL = 1e-7


@dataclass
class Sample:
    """One evaluated point together with where it came from.

    ``tags`` describe the source (``warped-2xN``, ``ecs``, ``hypersurface``,
    ...) and ``extras`` carries source-specific data such as the
    hypersurface data or the fundamental function of a synthetic model.
    """

    chart: str
    pkg: CurvaturePackage
    tags: frozenset = frozenset()
    extras: dict = field(default_factory=dict)

    @cached_property
    def report(self) -> ClassificationReport:
        return classify_point(self.pkg)

    @property
    def n(self) -> int:
        return self.pkg.n

    @cached_property
    def rng_seed(self) -> list:
        """Deterministic seed derived from the point, for synthetic auxiliary inputs."""
        pt = self.pkg.point if self.pkg.point is not None else (0.0,)
        return [int(x) for x in np.asarray(pt, dtype=np.float64).view(np.uint64)] + [self.n]


@dataclass(frozen=True)
class IdentityCheck:
    """A named identity evaluated as a scale-invariant residual.

    ``requires`` returns ``None`` when the identity applies to a sample and a
    human-readable reason otherwise; ``evaluate`` is only called in the first
    case.
    """

    id: str
    citation: str
    requires: Callable[[Sample], str | None]
    evaluate: Callable[[Sample], float]
    tol: float = PASS_TOL


REGISTRY: dict = {}


def register(id: str, citation: str, requires=None, tol: float = PASS_TOL):
    """Decorator adding ``evaluate`` to the registry under ``id``."""

    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate check id {id!r}")
        REGISTRY[id] = IdentityCheck(id=id, citation=citation, requires=requires or always, evaluate=fn, tol=tol)
        return fn

    return deco


# -- residual helpers -------------------------------------------------------

def always(_s: Sample):
    return None


def zero_residual(*terms) -> float:
    """``|sum(terms)|`` relative to the largest term."""
    total = sum(terms)
    return sup(total) / (1.0 + max(sup(t) for t in terms))


def eq_residual(lhs, rhs) -> float:
    """Residual of ``lhs = rhs``; either side may be a list of summands."""
    lhs = list(lhs) if isinstance(lhs, (list, tuple)) else [lhs]
    rhs = list(rhs) if isinstance(rhs, (list, tuple)) else [rhs]
    return zero_residual(*lhs, *[-t for t in rhs])


# -- requirement combinators ------------------------------------------------

def all_of(*preds):
    def req(s):
        for p in preds:
            reason = p(s)
            if reason is not None:
                return reason
        return None

    return req


def min_dim(k):
    return lambda s: None if s.n >= k else f"needs n >= {k}"


def dim_is(k):
    return lambda s: None if s.n == k else f"needs n = {k}"


def has_tag(tag):
    return lambda s: None if tag in s.tags else f"applies to {tag} sources only"


def in_US(s):
    return None if s.report.in_US else "point is Einstein (not in U_S)"


def in_UC(s):
    return None if s.report.in_UC else "point is conformally flat (not in U_C)"


def conformally_flat(s):
    return None if (s.n == 3 or not s.report.in_UC) else "point is not conformally flat"


def roter_point(s):
    return None if s.report.roter is not None else f"point is not a Roter point (verdict {s.report.verdict})"


def pseudo_holds(*names):
    def req(s):
        for nm in names:
            fit = s.report.pseudo[nm]
            if fit.vacuous or not fit.holds(s.pkg.tol):
                return f"condition for {nm} does not hold non-vacuously"
        return None

    return req


# -- suite ------------------------------------------------------------------

def select(only=None, skip=None) -> list:
    """Checks whose id starts with one of ``only`` and with none of ``skip``."""
    out = []
    for cid, chk in REGISTRY.items():
        if only and not any(cid.startswith(p) for p in only):
            continue
        if skip and any(cid.startswith(p) for p in skip):
            continue
        out.append(chk)
    return out


def _clean(x: float) -> float:
    return float(x) if math.isfinite(x) else float("inf")


def run_checks(samples, checks, tol: float | None = None) -> list:
    """Evaluate every check at every sample; one row dict per (check, sample)."""
    rows = []
    for chk in checks:
        for s in samples:
            row = {
                "check": chk.id,
                "citation": chk.citation,
                "chart": s.chart,
                "point": None if s.pkg.point is None else [float(v) for v in s.pkg.point],
            }
            reason = chk.requires(s)
            if reason is not None:
                row.update({"residual": None, "pass": None, "skipped": reason})
            else:
                r = _clean(chk.evaluate(s))
                row.update({"residual": r, "pass": bool(r < (chk.tol if tol is None else tol)), "skipped": None})
            rows.append(row)
    return rows


def summarize(rows) -> list:
    """Aggregate rows per (check, chart): worst residual, pass iff every evaluated point passes."""
    groups: dict = {}
    for r in rows:
        groups.setdefault((r["check"], r["chart"]), []).append(r)
    out = []
    for (cid, chart), rs in groups.items():
        done = [r for r in rs if r["skipped"] is None]
        if not done:
            continue
        out.append({
            "check": cid,
            "citation": rs[0]["citation"],
            "chart": chart,
            "points": len(done),
            "skipped": len(rs) - len(done),
            "residual": max(r["residual"] for r in done),
            "pass": all(r["pass"] for r in done),
        })
    return out
