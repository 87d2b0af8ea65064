"""Pointwise structural classification and pseudosymmetry functions."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .fitting import FitResult, linear_combination_fit, proportionality_fit, rank_shift, sup
from .package import CurvaturePackage

VERDICTS = ("einstein", "quasi-einstein", "roter", "partially-einstein", "generalized-roter", "generic")


@dataclass(frozen=True)
class PseudoFit:
    """One pseudosymmetry function ``L`` with ``lhs = L * rhs`` fitted pointwise."""

    value: float | None
    residual: float
    degenerate: bool
    vacuous: bool

    @classmethod
    def from_fit(cls, fit: FitResult) -> "PseudoFit":
        return cls(
            value=None if fit.degenerate else fit.value,
            residual=float(fit.residual),
            degenerate=fit.degenerate,
            vacuous=fit.vacuous,
        )

    def holds(self, tol: float) -> bool:
        return self.vacuous or (not self.degenerate and self.residual < tol)


PSEUDO_PAIRS = {
    # name: (lhs, rhs) as functions of a package
    "L_R": (lambda p: p.dot("R", "R"), lambda p: p.q("g", "R")),
    "L_S": (lambda p: p.dot("R", "S"), lambda p: p.q("g", "S")),
    "L_1": (lambda p: p.dot("R", "C"), lambda p: p.q("g", "C")),
    "L_C": (lambda p: p.dot("C", "C"), lambda p: p.q("g", "C")),
    "L": (lambda p: p.dot("R", "R") - p.q("S", "R"), lambda p: p.q("g", "C")),
}


def pseudo_profile(pkg: CurvaturePackage) -> dict:
    """Fits of ``L_R, L_S, L_1, L_C, L`` from the five pseudosymmetry-type conditions."""
    return {name: PseudoFit.from_fit(proportionality_fit(lhs(pkg), rhs(pkg))) for name, (lhs, rhs) in PSEUDO_PAIRS.items()}


def roter_basis(pkg: CurvaturePackage) -> list:
    """``[S^S/2, g^S, g^g/2]``: the Roter equation reads ``R = phi, mu, eta`` against this."""
    return [0.5 * pkg.wedge("S", "S"), pkg.wedge("g", "S"), pkg.G]


def generalized_roter_basis(pkg: CurvaturePackage) -> list:
    """``[S2^S2/2, S^S2, S^S/2, g^S2, g^S, g^g/2]`` for coefficients ``(phi2, phi1, phi, mu1, mu, eta)``."""
    return [
        0.5 * pkg.wedge("S2", "S2"),
        pkg.wedge("S", "S2"),
        0.5 * pkg.wedge("S", "S"),
        pkg.wedge("g", "S2"),
        pkg.wedge("g", "S"),
        pkg.G,
    ]


def roter_fit(pkg: CurvaturePackage) -> FitResult:
    return linear_combination_fit(pkg.R, roter_basis(pkg))


def roter_closed_forms(n: int, kappa: float, phi: float, mu: float, eta: float) -> dict:
    """Closed-form consequences of ``R = phi/2 S^S + mu g^S + eta/2 g^g``.

    Returns ``alpha1, alpha2`` (with ``S2 = alpha1 S + alpha2 g``) and the
    pseudosymmetry functions ``L_R`` (= ``L_S`` = ``L_1``), ``L`` and ``L_C``.
    """
    alpha1 = kappa + ((n - 2) * mu - 1) / phi
    alpha2 = (mu * kappa + (n - 1) * eta) / phi
    L_R = ((n - 2) * (mu**2 - phi * eta) - mu) / phi
    L = L_R + mu / phi
    L_C = L_R + (kappa / (n - 1) - alpha1) / (n - 2)
    return {"alpha1": alpha1, "alpha2": alpha2, "L_R": L_R, "L": L, "L_C": L_C}


@dataclass(frozen=True)
class ClassificationReport:
    point: tuple | None
    verdict: str
    einstein: bool
    in_US: bool
    in_UC: bool
    quasi_einstein: float | None = None
    partially_einstein: tuple | None = None
    partially_einstein_residual: float | None = None
    roter: tuple | None = None
    roter_residual: float | None = None
    generalized_roter: tuple | None = None
    generalized_roter_residual: float | None = None
    pseudo: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pseudo"] = {k: asdict(v) for k, v in self.pseudo.items()}
        return _plain(d)


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


def quasi_einstein_shift(pkg: CurvaturePackage):
    """``alpha`` with ``rank(S - alpha g) = 1``, or ``None``."""
    rs = rank_shift(pkg.S, pkg.m)
    alpha, rank = rs.best
    return alpha if rank == 1 else None


def classify_point(pkg: CurvaturePackage, tol: float | None = None, with_pseudo: bool = True) -> ClassificationReport:
    """Classify a point; verdict precedence is Einstein > quasi-Einstein > Roter.

    ``partially_einstein`` is also filled for quasi-Einstein and Roter points
    (those classes are contained in it); for quasi-Einstein points it comes
    from the closed form ``lambda = kappa - (n-2) alpha``,
    ``mu = alpha((n-1) alpha - kappa)``.
    """
    tol = pkg.tol if tol is None else tol
    n = pkg.n
    in_US = pkg.einstein_defect > tol
    in_UC = n >= 4 and pkg.weyl_defect > tol
    pseudo = pseudo_profile(pkg) if with_pseudo else {}
    base = dict(point=pkg.point, einstein=not in_US, in_US=in_US, in_UC=in_UC, pseudo=pseudo)
    if not in_US:
        return ClassificationReport(verdict="einstein", **base)

    alpha = quasi_einstein_shift(pkg)
    pe_fit = linear_combination_fit(pkg.S2, [pkg.S, pkg.g])
    if alpha is not None:
        lam, mu = pkg.kappa - (n - 2) * alpha, alpha * ((n - 1) * alpha - pkg.kappa)
        return ClassificationReport(
            verdict="quasi-einstein", quasi_einstein=alpha,
            partially_einstein=(lam, mu), partially_einstein_residual=pe_fit.residual, **base,
        )

    pe = pe_fit.residual < tol
    extra = {}
    if pe:
        extra.update(partially_einstein=tuple(float(c) for c in pe_fit.coeffs), partially_einstein_residual=pe_fit.residual)
    verdict = "partially-einstein" if pe else "generic"
    if in_UC:
        rf = roter_fit(pkg)
        if rf.residual < tol:
            extra.update(roter=tuple(float(c) for c in rf.coeffs), roter_residual=rf.residual)
            verdict = "roter"
        elif not pe:
            gf = linear_combination_fit(pkg.R, generalized_roter_basis(pkg))
            if gf.residual < tol:
                extra.update(generalized_roter=tuple(float(c) for c in gf.coeffs), generalized_roter_residual=gf.residual)
                verdict = "generalized-roter"
    return ClassificationReport(verdict=verdict, **base, **extra)


def wedge_defect_quasi(pkg: CurvaturePackage, alpha: float) -> float:
    """``|S^S/2 - alpha g^S + alpha^2/2 g^g|`` relative to ``|S^S|``: zero at quasi-Einstein points."""
    T = 0.5 * pkg.wedge("S", "S") - alpha * pkg.wedge("g", "S") + alpha**2 * pkg.G
    return sup(T) / (1.0 + sup(pkg.wedge("S", "S")))
