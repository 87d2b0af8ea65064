"""Pointwise hypersurface data and the identities it satisfies.

A hypersurface is prescribed at a point by its induced metric ``g`` and
second fundamental tensor ``H``; no embedding is integrated. In a space of
constant curvature ``c = kt / (n (n+1))`` the Gauss equation gives

    R = c/2 g^g + eps/2 H^H,

and every statement checked here is algebraic in ``(g, H, eps, kt)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tensors as tc
from .checks import REGISTRY, Sample, all_of, eq_residual, has_tag, in_UC, in_US, min_dim, register, run_checks, zero_residual
from .fitting import FitResult, linear_combination_fit, numerical_rank, proportionality_fit, rank_shift, sup
from .package import MEMBERSHIP_TOL, CurvaturePackage, package_from_parts
from .tensors import MetricAtPoint, kn_product, metric_at, tachibana

Q = tachibana


@dataclass(frozen=True)
class HypersurfaceData:
    """Induced metric, second fundamental tensor and ambient data at one point."""

    name: str
    m: MetricAtPoint
    H: np.ndarray
    eps: int
    ambient_kappa: float
    tol: float = MEMBERSHIP_TOL
    H2: np.ndarray = field(init=False, repr=False)
    H3: np.ndarray = field(init=False, repr=False)
    trH: float = field(init=False)
    trH2: float = field(init=False)
    uh_fit: FitResult = field(init=False, repr=False)

    def __post_init__(self):
        if self.eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        H = np.asarray(self.H, dtype=float)
        if H.shape != (self.n, self.n) or sup(H - H.T) > 1e-12 * (1 + sup(H)):
            raise ValueError("H must be a symmetric n x n matrix")
        set_ = object.__setattr__
        set_(self, "H", 0.5 * (H + H.T))
        set_(self, "H2", tc.metric_power(self.H, 2, self.m))
        set_(self, "H3", tc.metric_power(self.H, 3, self.m))
        set_(self, "trH", tc.trace_g(self.H, self.m))
        set_(self, "trH2", tc.trace_g(self.H2, self.m))
        set_(self, "uh_fit", linear_combination_fit(self.H2, [self.H, self.m.g]))

    @property
    def n(self) -> int:
        return self.m.dim

    @property
    def c(self) -> float:
        """Sectional curvature of the ambient space form."""
        return self.ambient_kappa / (self.n * (self.n + 1))

    @property
    def mu(self) -> float:
        """Coefficient of ``G`` in the component form of the Weyl tensor."""
        n = self.n
        return self.eps / ((n - 2) * (n - 1)) * (self.trH**2 - self.trH2)

    @property
    def umbilical(self) -> bool:
        return sup(self.H - self.trH / self.n * self.m.g) <= self.tol * (1 + sup(self.H))

    @property
    def in_UH(self) -> bool:
        """``H^2`` is not a combination of ``H`` and ``g``."""
        return self.uh_fit.residual > self.tol


def make_hypersurface(H, eps: int = 1, ambient_kappa: float = 0.0, g=None, name: str = "H", tol: float = MEMBERSHIP_TOL) -> HypersurfaceData:
    H = np.asarray(H, dtype=float)
    m = metric_at(np.eye(H.shape[0]) if g is None else np.asarray(g, dtype=float))
    return HypersurfaceData(name=name, m=m, H=H, eps=int(eps), ambient_kappa=float(ambient_kappa), tol=tol)


def from_sample(sample, tol: float = MEMBERSHIP_TOL) -> HypersurfaceData:
    """Build from a parsed sample-file entry."""
    return make_hypersurface(sample.H, sample.eps, sample.ambient_kappa, g=sample.g, name=sample.name, tol=tol)


# -- curvature from the Gauss equation --------------------------------------

def gauss_curvature(hd: HypersurfaceData) -> np.ndarray:
    g = hd.m.g
    return 0.5 * hd.c * kn_product(g, g) + 0.5 * hd.eps * kn_product(hd.H, hd.H)


def gauss_ricci(hd: HypersurfaceData):
    """Ricci tensor and scalar curvature from the contracted Gauss equation."""
    n = hd.n
    S = (n - 1) * hd.c * hd.m.g + hd.eps * (hd.trH * hd.H - hd.H2)
    kappa = (n - 1) * hd.ambient_kappa / (n + 1) + hd.eps * (hd.trH**2 - hd.trH2)
    return S, kappa


def gauss_package(hd: HypersurfaceData) -> CurvaturePackage:
    """Curvature package of the hypersurface; ``S`` and ``kappa`` come from the contracted forms."""
    S, kappa = gauss_ricci(hd)
    return package_from_parts(hd.m, gauss_curvature(hd), S, kappa, tol=hd.tol)


def gauss_consistency(hd: HypersurfaceData) -> float:
    """Residual between contracting the Gauss curvature and the contracted formulas."""
    R = gauss_curvature(hd)
    S, kappa = gauss_ricci(hd)
    S_from_R = tc.ricci_of(R, hd.m)
    return max(eq_residual(S_from_R, S), abs(tc.trace_g(S_from_R, hd.m) - kappa) / (1 + abs(kappa)))


def weyl_from_H(hd: HypersurfaceData) -> np.ndarray:
    """``C = eps/(n-2) E(H)``, valid for any conformally flat ambient space."""
    return hd.eps / (hd.n - 2) * tc.build_E_of(hd.H, hd.m)


@dataclass(frozen=True)
class CubicFit:
    """``H^3 - tr(H) H^2 = psi H + rho g`` fitted at a point (``rho = 0`` when fitted without ``g``)."""

    psi: float
    rho: float
    residual: float
    umbilical: bool
    with_rho: bool

    def holds(self, tol: float) -> bool:
        return not self.umbilical and self.residual < tol


def h_cubic_fit(hd: HypersurfaceData, with_rho: bool = True) -> CubicFit:
    target = hd.H3 - hd.trH * hd.H2
    if hd.umbilical:
        return CubicFit(float("nan"), float("nan"), float("inf"), True, with_rho)
    basis = [hd.H, hd.m.g] if with_rho else [hd.H]
    fit = linear_combination_fit(target, basis)
    if fit.degenerate:
        return CubicFit(float("nan"), float("nan"), float("inf"), True, with_rho)
    psi = float(fit.coeffs[0])
    rho = float(fit.coeffs[1]) if with_rho else 0.0
    return CubicFit(psi, rho, float(fit.residual), False, with_rho)


# -- recovering T in conditions of the form  X = Q(g, T) -------------------

T_BASIS_NAMES = ("R", "S^S", "g^S", "g^S2", "g^g", "H^H", "g^H", "g^H2")


def t_basis(pkg: CurvaturePackage, hd: HypersurfaceData) -> list:
    g, S = pkg.g, pkg.S
    return [
        pkg.R,
        kn_product(S, S),
        kn_product(g, S),
        kn_product(g, pkg.S2),
        kn_product(g, g),
        kn_product(hd.H, hd.H),
        kn_product(g, hd.H),
        kn_product(g, hd.H2),
    ]


@dataclass(frozen=True)
class TFit:
    """Minimal-norm ``T`` in the span of :data:`T_BASIS_NAMES` with ``target = Q(g, T)``."""

    T: np.ndarray
    fit: FitResult

    def holds(self, tol: float) -> bool:
        return not self.fit.degenerate and self.fit.residual < tol


def fit_T(target, pkg: CurvaturePackage, hd: HypersurfaceData) -> TFit:
    basis = t_basis(pkg, hd)
    fit = linear_combination_fit(target, [Q(pkg.g, B) for B in basis])
    T = sum(c * B for c, B in zip(fit.coeffs, basis))
    return TFit(T=T, fit=fit)


T_TARGETS = {
    "cc": lambda p: p.dot("C", "C"),
    "t1": lambda p: p.dot("R", "C"),
    "t2": lambda p: p.dot("C", "R"),
    "t3": lambda p: p.dot("R", "C") - p.dot("C", "R"),
}


# -- closed forms -----------------------------------------------------------

def remark_72_coefficients(hd: HypersurfaceData, alpha1: float, alpha2: float) -> tuple:
    """``(alpha, beta, gamma)`` with ``C = alpha/2 H^H + beta g^H + gamma/2 g^g`` when ``H^2 = alpha1 H + alpha2 g``."""
    n, eps = hd.n, hd.eps
    beta = eps * (alpha1 - hd.trH) / (n - 2)
    gamma = eps / (n - 2) * (2 * alpha2 + (hd.trH**2 - hd.trH2) / (n - 1))
    return float(eps), beta, gamma


def weyl_T_closed_forms(n: int, kappa: float, kt: float, eps: int, psi: float) -> dict:
    """``(a, b)`` with ``Weyl(T_i) = a C + b E`` for ``T_cc, T_1, T_2, T_3``."""
    t2 = ((kappa + 2 * eps * psi) / (n - 1) - kt / (n + 1), -(n - 3) / ((n - 2) ** 2 * (n - 1)))
    return {
        "cc": t2,
        "t1": ((kappa + eps * psi) / (n - 1) - (n - 1) * kt / (n * (n + 1)), -1.0 / ((n - 2) * (n - 1))),
        "t2": t2,
        "t3": (kt / (n * (n + 1)) - eps * psi / (n - 1), -1.0 / ((n - 2) ** 2 * (n - 1))),
    }


def rho_83(pkg: CurvaturePackage, hd: HypersurfaceData, psi: float) -> float:
    n = hd.n
    return (pkg.kappa / (n - 1) - hd.ambient_kappa / (n + 1) + hd.eps * psi) / (n - 3)


def shifted_pair(pkg: CurvaturePackage, hd: HypersurfaceData, t: float) -> tuple:
    """``(S - ((n-1)c - t) g, R - (c - t/(n-2)) G)``."""
    n, c = hd.n, hd.c
    return pkg.S - ((n - 1) * c - t) * pkg.g, pkg.R - (c - t / (n - 2)) * pkg.G


# -- the registered checks --------------------------------------------------

def _hd(s: Sample) -> HypersurfaceData:
    return s.extras["hd"]


def _cubic(s: Sample, with_rho: bool) -> CubicFit:
    key = "cubic_rho" if with_rho else "cubic"
    if key not in s.extras:
        s.extras[key] = h_cubic_fit(_hd(s), with_rho)
    return s.extras[key]


def _tfit(s: Sample, which: str) -> TFit:
    key = "tfit_" + which
    if key not in s.extras:
        s.extras[key] = fit_T(T_TARGETS[which](s.pkg), s.pkg, _hd(s))
    return s.extras[key]


def _cubic_holds(with_rho: bool):
    label = "H^3 = tr(H) H^2 + psi H + rho g" if with_rho else "H^3 = tr(H) H^2 + psi H"

    def req(s):
        return None if _cubic(s, with_rho).holds(s.pkg.tol) else f"{label} does not hold"

    return req


def _t_holds(which: str):
    def req(s):
        return None if _tfit(s, which).holds(s.pkg.tol) else f"no generalized curvature T with the {which} condition"

    return req


def _lc_holds(s):
    fit = s.report.pseudo["L_C"]
    return None if (not fit.vacuous and fit.holds(s.pkg.tol)) else "C.C = L_C Q(g,C) does not hold"


def _partially_umbilical(s):
    return None if not _hd(s).in_UH else "H^2 is not a combination of H and g"


def _non_umbilical(s):
    return None if not _hd(s).umbilical else "point is umbilical"


def _in_UH(s):
    return None if _hd(s).in_UH else "point is not in U_H"


HYP = has_tag("hypersurface")
SEC8 = all_of(HYP, min_dim(4), in_US, in_UC)

C_ZERO_TOL = 1e-9


def weyl_vanishes(pkg: CurvaturePackage, hd: HypersurfaceData) -> bool:
    return sup(pkg.C) / (1 + sup(hd.H) ** 2) < C_ZERO_TOL


def quasi_umbilical(hd: HypersurfaceData) -> bool:
    return rank_shift(hd.H, hd.m).min_rank == 1


@register("gauss-contraction", "Ric(c/2 g^g + eps/2 H^H) = (n-1)c g + eps(tr(H) H - H^2)", requires=HYP, tol=1e-11)
def _gauss(s):
    return gauss_consistency(_hd(s))


@register("weyl-from-h", "C = eps/(n-2) E(H)", requires=all_of(HYP, min_dim(4)), tol=1e-10)
def _weyl_h(s):
    return eq_residual(s.pkg.C, weyl_from_H(_hd(s)))


@register("theorem-7.1", "non-umbilical: C = 0 iff rank(H - alpha g) = 1", requires=all_of(HYP, min_dim(4), _non_umbilical))
def _t71(s):
    hd = _hd(s)
    if quasi_umbilical(hd):
        return sup(s.pkg.C) / (1 + sup(hd.H) ** 2)
    # converse direction: a vanishing Weyl tensor without rank one is a counterexample
    return float("inf") if weyl_vanishes(s.pkg, hd) else 0.0


@register(
    "remark-7.2-i",
    "H^2 = a1 H + a2 g  =>  C = eps/2 H^H + beta g^H + gamma/2 g^g, C.C = (n-2)(eps beta^2 - gamma) Q(g,C)",
    requires=all_of(HYP, min_dim(4), in_UC, _partially_umbilical),
)
def _r72i(s):
    hd, p = _hd(s), s.pkg
    n, g = hd.n, hd.m.g
    a1, a2 = (float(c) for c in hd.uh_fit.coeffs)
    alpha, beta, gamma = remark_72_coefficients(hd, a1, a2)
    lc = (n - 2) * (hd.eps * beta**2 - gamma)
    fit = s.report.pseudo["L_C"]
    return max(
        eq_residual(p.C, [0.5 * alpha * kn_product(hd.H, hd.H), beta * kn_product(g, hd.H), 0.5 * gamma * kn_product(g, g)]),
        eq_residual(p.dot("C", "C"), lc * p.q("g", "C")),
        abs(fit.value - lc) / (1 + abs(lc)) if fit.value is not None else float("inf"),
        abs(a2 - (hd.trH2 - a1 * hd.trH) / n) / (1 + abs(a2)),
        eq_residual(hd.H2 - hd.trH2 / n * g, a1 * (hd.H - hd.trH / n * g)),
    )


@register(
    "remark-7.2-iii",
    "H^3 = tr(H) H^2 + psi H  =>  C.C = (eps((trH)^2 - tr H^2)/((n-2)(n-1)) + eps psi/(n-2)) Q(g,C) - (n-3)/(n-2) Q(H^2, H^H/2)",
    requires=all_of(HYP, min_dim(4), in_UC, _cubic_holds(False)),
)
def _r72iii(s):
    hd, p = _hd(s), s.pkg
    n, eps = hd.n, hd.eps
    psi = _cubic(s, False).psi
    coef = eps / ((n - 2) * (n - 1)) * (hd.trH**2 - hd.trH2) + eps * psi / (n - 2)
    return eq_residual(p.dot("C", "C"), [coef * p.q("g", "C"), -(n - 3) / (n - 2) * Q(hd.H2, 0.5 * kn_product(hd.H, hd.H))])


@register(
    "section-8-realRa",
    "Q(H^2, H^H/2) = -Q(tr(H) H - H^2, H^H/2) = -Q(S - (n-1)c g, R - c/2 g^g)",
    requires=all_of(HYP, min_dim(4)),
)
def _realRa(s):
    hd, p = _hd(s), s.pkg
    half_hh = 0.5 * kn_product(hd.H, hd.H)
    lhs = Q(hd.H2, half_hh)
    X, Y = shifted_pair(p, hd, 0.0)
    return max(
        eq_residual(lhs, -Q(hd.trH * hd.H - hd.H2, half_hh)),
        eq_residual(lhs, -Q(hd.eps * (hd.trH * hd.H - hd.H2), hd.eps * half_hh)),
        eq_residual(lhs, -Q(X, Y)),
    )


@register("section-8-pseudo", "R.R - Q(S,R) = -(n-2) kt/(n(n+1)) Q(g,C)", requires=all_of(HYP, min_dim(4)))
def _pseudo8(s):
    hd, p = _hd(s), s.pkg
    n = hd.n
    return eq_residual(p.dot("R", "R") - p.q("S", "R"), -(n - 2) * hd.ambient_kappa / (n * (n + 1)) * p.q("g", "C"))


@register("section-8-l-fit", "fitted L in R.R - Q(S,R) = L Q(g,C) equals -(n-2) kt/(n(n+1))", requires=all_of(HYP, min_dim(4), in_UC))
def _lfit8(s):
    hd = _hd(s)
    n = hd.n
    expected = -(n - 2) * hd.ambient_kappa / (n * (n + 1))
    fit = s.report.pseudo["L"]
    if fit.value is None:
        return float("inf")
    return max(fit.residual, abs(fit.value - expected) / (1 + abs(expected)))


@register(
    "section-8-crrc",
    "C.R + R.C = C.C + Q(S,C) - (n-2) kt/(n(n+1)) Q(g,C) - Q(g,E)/(n-2)^2",
    requires=all_of(HYP, min_dim(4)),
)
def _crrc8(s):
    hd, p = _hd(s), s.pkg
    n = hd.n
    return eq_residual(
        [p.dot("C", "R"), p.dot("R", "C")],
        [p.dot("C", "C"), p.q("S", "C"), -(n - 2) * hd.ambient_kappa / (n * (n + 1)) * p.q("g", "C"), -p.q("g", "E") / (n - 2) ** 2],
    )


@register(
    "theorem-8.1-cc",
    "C.C = Q(g,T): Weyl(T) = ((k + 2 eps psi)/(n-1) - kt/(n+1)) C - (n-3)/((n-2)^2 (n-1)) E and the matching C.C expansion",
    requires=all_of(SEC8, _cubic_holds(True), _t_holds("cc")),
)
def _t81cc(s):
    hd, p = _hd(s), s.pkg
    a, b = weyl_T_closed_forms(hd.n, p.kappa, hd.ambient_kappa, hd.eps, _cubic(s, True).psi)["cc"]
    T = _tfit(s, "cc").T
    return max(
        eq_residual(tc.weyl_of(T, p.m), [a * p.C, b * p.E]),
        eq_residual(p.dot("C", "C"), [a * p.q("g", "C"), b * p.q("g", "E")]),
    )


@register(
    "theorem-8.1",
    "((k + 2 eps psi)/(n-1) - kt/(n+1) - L_C) C = (n-3)/((n-2)^2 (n-1)) E",
    requires=all_of(SEC8, _cubic_holds(True), _t_holds("cc"), _lc_holds),
)
def _t81(s):
    hd, p = _hd(s), s.pkg
    n = hd.n
    a, b = weyl_T_closed_forms(n, p.kappa, hd.ambient_kappa, hd.eps, _cubic(s, True).psi)["cc"]
    return eq_residual((a - s.report.pseudo["L_C"].value) * p.C, -b * p.E)


def _register_t82(which: str, condition: str):
    @register(
        f"theorem-8.2-{which}",
        f"{condition} = Q(g,T) => Weyl(T) = a C + b E",
        requires=all_of(SEC8, _cubic_holds(True), _t_holds(which)),
    )
    def _t82(s):
        hd, p = _hd(s), s.pkg
        a, b = weyl_T_closed_forms(hd.n, p.kappa, hd.ambient_kappa, hd.eps, _cubic(s, True).psi)[which]
        return eq_residual(tc.weyl_of(_tfit(s, which).T, p.m), [a * p.C, b * p.E])


_register_t82("t1", "R.C")
_register_t82("t2", "C.R")
_register_t82("t3", "R.C - C.R")


@register(
    "theorem-8.3-i",
    "C.C = (n-3)/(n-2) Q(S - ((n-1)c - rho) g, R - (c - rho/(n-2)) G), rho = (k/(n-1) - kt/(n+1) + eps psi)/(n-3)",
    requires=all_of(SEC8, _cubic_holds(False)),
)
def _t83i(s):
    hd, p = _hd(s), s.pkg
    n = hd.n
    rho = rho_83(p, hd, _cubic(s, False).psi)
    X, Y = shifted_pair(p, hd, rho)
    X0, Y0 = shifted_pair(p, hd, 0.0)
    return max(
        eq_residual((n - 2) / (n - 3) * p.dot("C", "C"), [rho * p.q("g", "C"), Q(X0, Y0)]),
        eq_residual(p.dot("C", "C"), (n - 3) / (n - 2) * Q(X, Y)),
    )


def theorem_83_ii_parts(pkg: CurvaturePackage, hd: HypersurfaceData, psi: float, L_C: float) -> dict:
    """Residuals of the conclusions with ``tau = rho - (n-2)/(n-3) L_C``.

    Covers ``tau Q(g,C) = Q(S - (n-1)c g, R - c G)``, the shifted form
    ``Q(X, Y) = 0``, ``E = lambda C`` and the rank dichotomy for ``X``:
    rank one gives ``E = 0``; higher rank gives ``Y = phi/2 X^X`` and
    ``(n-2) C = phi E``.
    """
    n = hd.n
    tau = rho_83(pkg, hd, psi) - (n - 2) / (n - 3) * L_C
    X0, Y0 = shifted_pair(pkg, hd, 0.0)
    X, Y = shifted_pair(pkg, hd, tau)
    lam = proportionality_fit(pkg.E, pkg.C)
    rank = numerical_rank(X)
    out = {
        "tau": tau,
        "rank": rank,
        "ee": zero_residual(tau * pkg.q("g", "C"), -Q(X0, Y0)),
        # Q(X, Y) = 0 has no right-hand side to set the scale; use |X| |Y|
        "gg": sup(Q(X, Y)) / (1 + max(sup(X) * sup(Y), sup(Q(X0, Y0)))),
        "lambda": lam.value if not lam.degenerate else None,
        "lambda_residual": lam.residual,
    }
    if rank == 1:
        out["dichotomy"] = sup(pkg.E) / (1 + sup(pkg.C))
    else:
        wx = 0.5 * kn_product(X, X)
        phi = proportionality_fit(Y, wx)
        out["phi"] = phi.value if not phi.degenerate else None
        out["dichotomy"] = max(phi.residual, eq_residual((n - 2) * pkg.C, phi.value * pkg.E)) if not phi.degenerate else float("inf")
    return out


@register(
    "theorem-8.3-ii",
    "with tau = rho - (n-2)/(n-3) L_C: Q(S - ((n-1)c - tau) g, R - (c - tau/(n-2)) G) = 0, E = lambda C",
    requires=all_of(SEC8, _cubic_holds(False), _lc_holds),
)
def _t83ii(s):
    hd, p = _hd(s), s.pkg
    parts = theorem_83_ii_parts(p, hd, _cubic(s, False).psi, s.report.pseudo["L_C"].value)
    return max(parts["ee"], parts["gg"], parts["lambda_residual"], parts["dichotomy"])


@register("u-h-subset", "U_H is contained in U_S and U_C", requires=all_of(HYP, min_dim(4), _in_UH))
def _uh(s):
    return 0.0 if (s.report.in_US and s.report.in_UC) else 1.0


HYPERSURFACE_CHECKS = tuple(
    cid for cid in REGISTRY
    if cid.startswith(("gauss-", "weyl-from-h", "theorem-7", "remark-7", "section-8", "theorem-8", "u-h-"))
)


# -- samples and tables -----------------------------------------------------

def hyper_sample(hd: HypersurfaceData, label: str | None = None) -> Sample:
    return Sample(chart=hd.name if label is None else label, pkg=gauss_package(hd), tags=frozenset({"hypersurface"}), extras={"hd": hd})


def random_frame(n: int, signature: int, rng) -> tuple:
    """Random orthonormal-frame metric ``diag(-1.., 1..)`` and a random symmetric matrix."""
    g = np.diag([-1.0] * signature + [1.0] * (n - signature))
    A = rng.normal(size=(n, n))
    return g, 0.5 * (A + A.T)


def theorem_71_samples(count: int = 200, seed: int = 0) -> list:
    """Seeded second fundamental tensors for the Weyl-vanishing biconditional.

    The mix cycles through quasi-umbilical tensors ``a g + b v v``, generic
    ones, tensors with two double principal curvatures, and quasi-umbilical
    ones perturbed by ``1e-3``; dimensions alternate between 4 and 5 and one
    in three uses a Lorentzian frame.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = 4 + i % 2
        sig = 1 if i % 3 == 2 else 0
        g, A = random_frame(n, sig, rng)
        kind = ("quasi-umbilical", "generic", "double", "perturbed")[i % 4]
        a, b = rng.uniform(-2, 2), rng.choice([-1, 1]) * rng.uniform(0.5, 2)
        v = rng.normal(size=n)
        qu = a * g + b * np.outer(g @ v, g @ v)
        if kind == "quasi-umbilical":
            H = qu
        elif kind == "generic":
            H = A
        elif kind == "double":
            x, y = rng.uniform(-2, 2, size=2) + np.array([0.0, 1.5])
            H = g @ np.diag([x] * 2 + [y] * (n - 2))
        else:
            H = qu + 1e-3 * A
        out.append((kind, make_hypersurface(H, eps=rng.choice([-1, 1]), ambient_kappa=rng.uniform(-5, 5), g=g, name=f"t71-{i}")))
    return out


def theorem_71_table(count: int = 200, seed: int = 0) -> list:
    """Per-sample ``(kind, quasi_umbilical, weyl_vanishes, umbilical)``; the theorem says the middle two agree."""
    rows = []
    for kind, hd in theorem_71_samples(count, seed):
        pkg = gauss_package(hd)
        rows.append({"kind": kind, "name": hd.name, "umbilical": hd.umbilical,
                     "quasi_umbilical": quasi_umbilical(hd), "weyl_vanishes": weyl_vanishes(pkg, hd)})
    return rows


def check_hyp_identities(hd: HypersurfaceData, only=None, tol: float | None = None) -> dict:
    """Evaluate every hypersurface check on ``hd`` and report the fitted auxiliary data."""
    s = hyper_sample(hd)
    ids = [c for c in HYPERSURFACE_CHECKS if not only or any(c.startswith(o) for o in only)]
    rows = run_checks([s], [REGISTRY[c] for c in ids], tol=tol)
    cubic, cubic_rho = _cubic(s, False), _cubic(s, True)
    tfits = {}
    for which in T_TARGETS:
        tf = _tfit(s, which)
        tfits[which] = {"residual": tf.fit.residual, "rank": tf.fit.rank, "cond": tf.fit.cond}
    return {
        "sample": hd.name,
        "n": hd.n,
        "eps": hd.eps,
        "ambient_kappa": hd.ambient_kappa,
        "in_UH": hd.in_UH,
        "in_US": s.report.in_US,
        "in_UC": s.report.in_UC,
        "verdict": s.report.verdict,
        "cubic": {"psi": cubic.psi, "residual": cubic.residual},
        "cubic_rho": {"psi": cubic_rho.psi, "rho": cubic_rho.rho, "residual": cubic_rho.residual},
        "t_fits": tfits,
        "rows": rows,
    }
