"""The curvature identity registry for chart points and synthetic algebraic models.

Every entry compares two sides computed independently from the curvature
package. Checks that need auxiliary symmetric tensors draw them from a
generator seeded by the point, so suite output is reproducible.
"""

from __future__ import annotations

import numpy as np

from . import tensors as tc
from .checks import (
    Sample,
    all_of,
    conformally_flat,
    dim_is,
    eq_residual,
    has_tag,
    in_UC,
    in_US,
    min_dim,
    pseudo_holds,
    register,
    roter_point,
    zero_residual,
)
from .classify import roter_closed_forms, wedge_defect_quasi
from .fitting import linear_combination_fit, proportionality_fit, rank_shift, residual, sup
from .package import package_from_curvature
from .tensors import kn_product as kn
from .tensors import kn_wedge_general as knw
from .tensors import metric_at
from .tensors import tachibana as Q

# -- auxiliary inputs -------------------------------------------------------


def _rng(s: Sample, salt: int):
    return np.random.default_rng(s.rng_seed + [salt])


def _random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)


def rank_one_shift_tensor(m, rng):
    """``A = alpha g + beta w (x) w`` with random ``alpha, beta, w``; returns ``(A, alpha)``."""
    n = m.dim
    w = rng.standard_normal(n)
    alpha = float(rng.uniform(-2, 2))
    beta = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0))
    return alpha * m.g + beta * np.outer(w, w), alpha


def _aux_sym(s: Sample):
    """Two random symmetric tensors A1, A2 and a third B, fixed per point."""
    rng = _rng(s, 1)
    return [_random_symmetric(rng, s.n) for _ in range(3)]


# -- Kulkarni-Nomizu / Tachibana product rules ------------------------------


@register("kn-q-a", "Q(A, A^B) = -1/2 Q(B, A^A)")
def _kn_q_a(s):
    p = s.pkg
    A, _, B = _aux_sym(s)
    worst = 0.0
    for a, b in ((A, B), (p.S, p.g), (p.g, p.S), (p.S, p.S2)):
        worst = max(worst, eq_residual(Q(a, kn(a, b)), -0.5 * Q(b, kn(a, a))))
    return worst


@register("kn-q-b", "A ^ Q(A, B) = -1/2 Q(B, A^A)")
def _kn_q_b(s):
    p = s.pkg
    A, _, B = _aux_sym(s)
    worst = 0.0
    for a, b in ((A, B), (p.S, p.g), (p.g, p.S)):
        worst = max(worst, eq_residual(knw(a, Q(a, b)), -0.5 * Q(b, kn(a, a))))
    return worst


@register("kn-q-gs", "Q(g, g^S) = -Q(S, G)")
def _kn_q_gs(s):
    p = s.pkg
    return eq_residual(Q(p.g, kn(p.g, p.S)), -Q(p.S, p.G))


@register("kn-q-ss", "Q(S, g^S) = -1/2 Q(g, S^S)")
def _kn_q_ss(s):
    p = s.pkg
    return eq_residual(Q(p.S, kn(p.g, p.S)), -0.5 * Q(p.g, kn(p.S, p.S)))


@register("kn-q-triple", "A1 ^ Q(A2,B) + A2 ^ Q(A1,B) + Q(B, A1^A2) = 0")
def _kn_q_triple(s):
    p = s.pkg
    A1, A2, B = _aux_sym(s)
    worst = 0.0
    for a1, a2, b in ((A1, A2, B), (p.g, p.S, p.S2)):
        worst = max(worst, zero_residual(knw(a1, Q(a2, b)), knw(a2, Q(a1, b)), Q(b, kn(a1, a2))))
    return worst


@register("kn-cyclic", "Q(B, A1^A2) + Q(A1, A2^B) + Q(A2, B^A1) = 0")
def _kn_cyclic(s):
    p = s.pkg
    A1, A2, B = _aux_sym(s)
    worst = 0.0
    for a1, a2, b in ((A1, A2, B), (p.g, p.S, p.S2)):
        worst = max(worst, zero_residual(Q(b, kn(a1, a2)), Q(a1, kn(a2, b)), Q(a2, kn(b, a1))))
    return worst


@register("q-g-gg", "Q(g, g^g) = 0")
def _q_g_gg(s):
    p = s.pkg
    return sup(Q(p.g, kn(p.g, p.g))) / (1.0 + sup(p.g) ** 3)


@register("qgc-expansion", "Q(g,C) = Q(g,R) - Q(g,g^S)/(n-2) = Q(g,R) + Q(S,G)/(n-2)", requires=min_dim(4))
def _qgc(s):
    p, n = s.pkg, s.n
    a = eq_residual(p.q("g", "C"), [p.q("g", "R"), -Q(p.g, kn(p.g, p.S)) / (n - 2)])
    b = eq_residual(p.q("g", "C"), [p.q("g", "R"), Q(p.S, p.G) / (n - 2)])
    return max(a, b)


@register(
    "qsc-expansion",
    "Q(S,C) = Q(S,R) + Q(g,S^S)/(2(n-2)) - kappa/((n-2)(n-1)) Q(g,g^S)",
    requires=min_dim(4),
)
def _qsc(s):
    p, n, k = s.pkg, s.n, s.pkg.kappa
    rhs = [p.q("S", "R"), Q(p.g, kn(p.S, p.S)) / (2 * (n - 2)), -k / ((n - 2) * (n - 1)) * Q(p.g, kn(p.g, p.S))]
    return eq_residual(p.q("S", "C"), rhs)


@register("qge-reduction", "Q(g,E) = Q(g, g^S2 + (n-2)/2 S^S - kappa g^S)")
def _qge(s):
    p, n = s.pkg, s.n
    T = kn(p.g, p.S2) + (n - 2) / 2 * kn(p.S, p.S) - p.kappa * kn(p.g, p.S)
    return eq_residual(p.q("g", "E"), Q(p.g, T))


@register("ric-e-zero", "Ric(E) = 0, and E = 0 when n = 3")
def _ric_e(s):
    p = s.pkg
    scale = 1.0 + sup(kn(p.S, p.S)) + sup(kn(p.g, p.S2))
    r = sup(tc.ricci_of(p.E, p.m)) / scale
    if s.n == 3:
        r = max(r, sup(p.E) / scale)
    return r


@register("weyl-of-r", "Weyl(R) = C and Ric(C) = 0", requires=min_dim(4))
def _weyl_r(s):
    p = s.pkg
    return max(residual(tc.weyl_of(p.R, p.m), p.C), sup(tc.ricci_of(p.C, p.m)) / (1.0 + sup(p.R)))


@register("quasi-einstein-e-zero", "rank(S - alpha g) = 1 implies E = 0 and S^S/2 = alpha g^S - alpha^2/2 g^g",
          requires=lambda s: None if s.report.quasi_einstein is not None else "point is not quasi-Einstein")
def _qe_e(s):
    p = s.pkg
    alpha = s.report.quasi_einstein
    return max(sup(p.E) / (1.0 + sup(kn(p.S, p.S))), wedge_defect_quasi(p, alpha))


def product_rule_battery(pkg, A1, A2, B) -> dict:
    """Each product rule, the cyclic identity, the Q(g,C)/Q(S,C) expansions and Q(g, g^g) = 0, once.

    ``A1, A2, B`` are arbitrary symmetric tensors; the registry checks above
    cover the same identities with more argument pairs per point.
    """
    p, n, g, S = pkg, pkg.n, pkg.g, pkg.S
    return {
        "kn-q-a": eq_residual(Q(A1, kn(A1, B)), -0.5 * Q(B, kn(A1, A1))),
        "kn-q-b": eq_residual(knw(A1, Q(A1, B)), -0.5 * Q(B, kn(A1, A1))),
        "kn-q-gs": eq_residual(Q(g, kn(g, S)), -Q(S, p.G)),
        "kn-q-ss": eq_residual(Q(S, kn(g, S)), -0.5 * Q(g, kn(S, S))),
        "kn-q-triple": zero_residual(knw(A1, Q(A2, B)), knw(A2, Q(A1, B)), Q(B, kn(A1, A2))),
        "kn-cyclic": zero_residual(Q(B, kn(A1, A2)), Q(A1, kn(A2, B)), Q(A2, kn(B, A1))),
        "q-g-gg": sup(Q(g, kn(g, g))) / (1.0 + sup(g) ** 3),
        "qgc-expansion": eq_residual(p.q("g", "C"), [p.q("g", "R"), Q(S, p.G) / (n - 2)]),
        "qsc-expansion": eq_residual(
            p.q("S", "C"),
            [p.q("S", "R"), Q(g, kn(S, S)) / (2 * (n - 2)), -p.kappa / ((n - 2) * (n - 1)) * Q(g, kn(g, S))],
        ),
    }


# -- rank-one shifts and E(A) -----------------------------------------------


def _prop21_input(s):
    m = s.pkg.m
    A, alpha = rank_one_shift_tensor(m, _rng(s, 2))
    A2 = tc.metric_power(A, 2, m)
    A3 = tc.metric_power(A, 3, m)
    tr = tc.trace_g(A, m)
    tr2 = tc.trace_g(A2, m)
    tr3 = tc.trace_g(A3, m)
    return m, A, A2, A3, tr, tr2, tr3, alpha


@register("prop-2.1-i-e", "rank(A - alpha g) = 1 implies E(A) = 0", requires=min_dim(4))
def _p21_e(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    n = m.dim
    terms = [kn(m.g, A2), (n - 2) / 2 * kn(A, A), -tr * kn(m.g, A), (tr**2 - tr2) / (2 * (n - 1)) * kn(m.g, m.g)]
    return zero_residual(*terms)


@register("prop-2.1-i-wedge", "rank(A - alpha g) = 1 implies A^A/2 = alpha g^A - alpha^2/2 g^g", requires=min_dim(4))
def _p21_wedge(s):
    m, A, *_, alpha = _prop21_input(s)
    return eq_residual(0.5 * kn(A, A), [alpha * kn(m.g, A), -alpha**2 / 2 * kn(m.g, m.g)])


@register(
    "prop-2.1-i-contract",
    "A2 - tr(A) A = -(n-2) alpha A - alpha tr(A) g + (n-1) alpha^2 g; tr(A2) - tr(A)^2 = -2(n-1) alpha tr(A) + n(n-1) alpha^2",
    requires=min_dim(4),
)
def _p21_contract(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    n = m.dim
    a = eq_residual([A2, -tr * A], [-(n - 2) * alpha * A, -alpha * tr * m.g, (n - 1) * alpha**2 * m.g])
    b = eq_residual(np.array([tr2 - tr**2]), np.array([-2 * (n - 1) * alpha * tr + n * (n - 1) * alpha**2]))
    return max(a, b)


@register("prop-2.1-i-a2", "A2 - tr(A2)/n g = (tr(A) - (n-2) alpha)(A - tr(A)/n g)", requires=min_dim(4))
def _p21_a2(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    n = m.dim
    return eq_residual(A2 - tr2 / n * m.g, (tr - (n - 2) * alpha) * (A - tr / n * m.g))


@register("prop-2.1-ii-cubic", "E(A) = 0 implies the cubic relation for A3 in terms of A2, A, g", requires=min_dim(4))
def _p21_cubic(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    n = m.dim
    rhs = [
        3 * tr / n * A2,
        ((n * n - 3 * n + 3) * tr2 / ((n - 1) * n) - tr**2 / (n - 1)) * A,
        (tr**3 / ((n - 1) * n) - tr * tr2 / (n - 1) + tr3 / n) * m.g,
    ]
    return eq_residual(A3, rhs)


@register(
    "prop-2.1-ii-ff",
    "Q(g,A3) + (n-3) Q(A,A2) - tr(A) Q(g,A2) + (tr(A)^2 - tr(A2))/(n-1) Q(g,A) = 0",
    requires=min_dim(4),
)
def _p21_ff(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    n, g = m.dim, m.g
    return zero_residual(Q(g, A3), (n - 3) * Q(A, A2), -tr * Q(g, A2), (tr**2 - tr2) / (n - 1) * Q(g, A))


@register("prop-2.1-ii-q", "Q(A - tr(A)/n g, A2 - tr(A2)/n g) = 0", requires=min_dim(4))
def _p21_q(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    n, g = m.dim, m.g
    X, Y = A - tr / n * g, A2 - tr2 / n * g
    return sup(Q(X, Y)) / (1.0 + sup(X) * sup(Y))


def _rho_fit(m, A, A2, tr, tr2):
    n = m.dim
    return proportionality_fit(A2 - tr2 / n * m.g, A - tr / n * m.g)


@register("prop-2.1-ii-rho", "A2 - tr(A2)/n g = rho (A - tr(A)/n g) for some rho", requires=min_dim(4))
def _p21_rho(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    return _rho_fit(m, A, A2, tr, tr2).residual


@register("prop-2.1-ii-jj", "(A - (tr(A) - rho)/(n-2) g) ^ (same) = 0", requires=min_dim(4))
def _p21_jj(s):
    m, A, A2, A3, tr, tr2, tr3, alpha = _prop21_input(s)
    n = m.dim
    rho = _rho_fit(m, A, A2, tr, tr2).value
    X = A - (tr - rho) / (n - 2) * m.g
    return sup(kn(X, X)) / (1.0 + sup(A) ** 2)


@register("prop-2.2", "T = a1 R + a2/2 S^S + a3 g^S + a4 g^S2 + a5/2 g^g implies Weyl(T) = a1 C + a2/(n-2) E",
          requires=min_dim(4))
def _p22(s):
    p, n = s.pkg, s.n
    a = _rng(s, 3).uniform(-2, 2, 5)
    T = a[0] * p.R + a[1] / 2 * kn(p.S, p.S) + a[2] * kn(p.g, p.S) + a[3] * kn(p.g, p.S2) + a[4] / 2 * kn(p.g, p.g)
    return eq_residual(tc.weyl_of(T, p.m), [a[0] * p.C, a[1] / (n - 2) * p.E])


# -- pseudosymmetry-type identities -----------------------------------------


@register("remark-3.1-i", "C = 0 implies R.R - Q(S,R) = Q(g, g^S2 + (n-2)/2 S^S - kappa g^S)/(n-2)^2 = Q(g,E)/(n-2)^2",
          requires=conformally_flat)
def _r31i(s):
    p, n = s.pkg, s.n
    lhs = [p.dot("R", "R"), -p.q("S", "R")]
    T = kn(p.g, p.S2) + (n - 2) / 2 * kn(p.S, p.S) - p.kappa * kn(p.g, p.S)
    return max(eq_residual(lhs, Q(p.g, T) / (n - 2) ** 2), eq_residual(lhs, p.q("g", "E") / (n - 2) ** 2))


@register("remark-3.1-ii", "n = 3 implies R.R = Q(S,R)", requires=dim_is(3))
def _r31ii(s):
    p = s.pkg
    return eq_residual(p.dot("R", "R"), p.q("S", "R"))


@register("remark-3.2-i", "C.R + R.C = R.R + C.C - Q(g, g^S2 - kappa/(n-1) g^S)/(n-2)^2", requires=min_dim(4))
def _r32i(s):
    p, n = s.pkg, s.n
    T = kn(p.g, p.S2) - p.kappa / (n - 1) * kn(p.g, p.S)
    return eq_residual([p.dot("C", "R"), p.dot("R", "C")], [p.dot("R", "R"), p.dot("C", "C"), -Q(p.g, T) / (n - 2) ** 2])


@register(
    "remark-3.2-ii",
    "R.R - Q(S,R) = L Q(g,C) implies C.R + R.C = C.C + Q(S,R) + L Q(g,C) - Q(g, g^S2 - kappa/(n-1) g^S)/(n-2)^2"
    " = C.C + Q(S,C) + L Q(g,C) - Q(g,E)/(n-2)^2",
    requires=all_of(min_dim(4), in_UC, pseudo_holds("L")),
)
def _r32ii(s):
    p, n = s.pkg, s.n
    L = s.report.pseudo["L"].value
    lhs = [p.dot("C", "R"), p.dot("R", "C")]
    # substituting R.R = Q(S,R) + L Q(g,C) into the identity for C.R + R.C; no S^S term survives here
    T = kn(p.g, p.S2) - p.kappa / (n - 1) * kn(p.g, p.S)
    a = eq_residual(lhs, [p.dot("C", "C"), p.q("S", "R"), L * p.q("g", "C"), -Q(p.g, T) / (n - 2) ** 2])
    b = eq_residual(lhs, [p.dot("C", "C"), p.q("S", "C"), L * p.q("g", "C"), -p.q("g", "E") / (n - 2) ** 2])
    return max(a, b)


@register(
    "remark-3.2-iii",
    "C.C = L_C Q(g,C) and R.R - Q(S,R) = L Q(g,C) imply C.R + R.C = Q(S,C) + (L_C + L) Q(g,C) - Q(g,E)/(n-2)^2",
    requires=all_of(min_dim(4), in_UC, pseudo_holds("L", "L_C")),
)
def _r32iii(s):
    p, n = s.pkg, s.n
    L, LC = s.report.pseudo["L"].value, s.report.pseudo["L_C"].value
    return eq_residual(
        [p.dot("C", "R"), p.dot("R", "C")],
        [p.q("S", "C"), (LC + L) * p.q("g", "C"), -p.q("g", "E") / (n - 2) ** 2],
    )


# -- Roter spaces -----------------------------------------------------------


def _roter(s):
    phi, mu, eta = s.report.roter
    return s.pkg, s.n, s.pkg.kappa, phi, mu, eta, roter_closed_forms(s.n, s.pkg.kappa, phi, mu, eta)


def _t42(suffix, citation):
    return register(f"theorem-4.2-{suffix}", citation, requires=roter_point)


@_t42("s2", "S2 = alpha1 S + alpha2 g, alpha1 = kappa + ((n-2) mu - 1)/phi, alpha2 = (mu kappa + (n-1) eta)/phi")
def _t42_s2(s):
    p, n, k, phi, mu, eta, cf = _roter(s)
    return eq_residual(p.S2, [cf["alpha1"] * p.S, cf["alpha2"] * p.g])


@_t42("rc", "R.C = L_R Q(g,C), L_R = ((n-2)(mu^2 - phi eta) - mu)/phi")
def _t42_rc(s):
    p, *_, cf = _roter(s)
    return eq_residual(p.dot("R", "C"), cf["L_R"] * p.q("g", "C"))


@_t42("rr", "R.R = L_R Q(g,R)")
def _t42_rr(s):
    p, *_, cf = _roter(s)
    return eq_residual(p.dot("R", "R"), cf["L_R"] * p.q("g", "R"))


@_t42("rs", "R.S = L_R Q(g,S)")
def _t42_rs(s):
    p, *_, cf = _roter(s)
    return eq_residual(p.dot("R", "S"), cf["L_R"] * p.q("g", "S"))


@_t42("rr-qsr", "R.R = Q(S,R) + L Q(g,C), L = L_R + mu/phi = (n-2)(mu^2 - phi eta)/phi")
def _t42_rrqsr(s):
    p, n, k, phi, mu, eta, cf = _roter(s)
    L2 = (n - 2) * (mu**2 - phi * eta) / phi
    a = eq_residual(p.dot("R", "R"), [p.q("S", "R"), cf["L"] * p.q("g", "C")])
    b = abs(cf["L"] - L2) / (1.0 + max(abs(cf["L"]), abs(L2)))
    return max(a, b)


@_t42("cc", "C.C = L_C Q(g,C), L_C = L_R + (kappa/(n-1) - alpha1)/(n-2)")
def _t42_cc(s):
    p, *_, cf = _roter(s)
    return eq_residual(p.dot("C", "C"), cf["L_C"] * p.q("g", "C"))


@_t42("cr", "C.R = L_C Q(g,R)")
def _t42_cr(s):
    p, *_, cf = _roter(s)
    return eq_residual(p.dot("C", "R"), cf["L_C"] * p.q("g", "R"))


@_t42("cs", "C.S = L_C Q(g,S)")
def _t42_cs(s):
    p, *_, cf = _roter(s)
    return eq_residual(p.dot("C", "S"), cf["L_C"] * p.q("g", "S"))


@_t42("cr-plus-rc", "C.R + R.C = Q(S,C) + (L + L_C - 1/((n-2) phi)) Q(g,C)")
def _t42_sum(s):
    p, n, k, phi, mu, eta, cf = _roter(s)
    coef = cf["L"] + cf["L_C"] - 1 / ((n - 2) * phi)
    return eq_residual([p.dot("C", "R"), p.dot("R", "C")], [p.q("S", "C"), coef * p.q("g", "C")])


@_t42(
    "rc-minus-cr-a",
    "R.C - C.R = ((mu - 1/(n-2))/phi + kappa/(n-1)) Q(g,R) + (mu (mu - 1/(n-2))/phi - eta) Q(S,G)",
)
def _t42_diff_a(s):
    p, n, k, phi, mu, eta, cf = _roter(s)
    c1 = (mu - 1 / (n - 2)) / phi + k / (n - 1)
    c2 = mu / phi * (mu - 1 / (n - 2)) - eta
    return eq_residual([p.dot("R", "C"), -p.dot("C", "R")], [c1 * p.q("g", "R"), c2 * p.q("S", "G")])


@_t42("cr-minus-rc", "C.R - R.C = Q(S,C) - kappa/(n-1) Q(g,C)")
def _t42_diff(s):
    p, n, k, *_ = _roter(s)
    return eq_residual([p.dot("C", "R"), -p.dot("R", "C")], [p.q("S", "C"), -k / (n - 1) * p.q("g", "C")])


@_t42("rc-minus-cr-b", "R.C - C.R = Q((mu kappa/(n-1) + eta) g + (1/(n-2) - mu - phi kappa/(n-1)) S, g^S)")
def _t42_diff_b(s):
    p, n, k, phi, mu, eta, cf = _roter(s)
    A = (mu * k / (n - 1) + eta) * p.g + (1 / (n - 2) - mu - phi * k / (n - 1)) * p.S
    return eq_residual([p.dot("R", "C"), -p.dot("C", "R")], Q(A, kn(p.g, p.S)))


@register("roter-closed-forms", "fitted L_R, L_S, L_1, L, L_C and S2 coefficients agree with the Roter closed forms",
          requires=roter_point)
def _roter_cf(s):
    p, n, k, phi, mu, eta, cf = _roter(s)
    ps = s.report.pseudo
    worst = 0.0
    pairs = [("L_R", "L_R"), ("L_S", "L_R"), ("L_1", "L_R"), ("L", "L"), ("L_C", "L_C")]
    for fitted, closed in pairs:
        if ps[fitted].degenerate:
            continue
        v, c = ps[fitted].value, cf[closed]
        worst = max(worst, abs(v - c) / (1.0 + max(abs(v), abs(c))))
    a12 = linear_combination_fit(p.S2, [p.S, p.g]).coeffs
    for v, c in zip(a12, (cf["alpha1"], cf["alpha2"])):
        worst = max(worst, abs(v - c) / (1.0 + max(abs(v), abs(c))))
    return worst


@register("prop-4.4", "(n-2) C = phi E", requires=roter_point)
def _p44(s):
    p, n, k, phi, *_ = _roter(s)
    return eq_residual((n - 2) * p.C, phi * p.E)


def _quasi_residual(p):
    rs = rank_shift(p.S, p.m)
    if not rs.candidates:
        return float("inf")
    return min(wedge_defect_quasi(p, a) for a, _ in rs.candidates)


def _d_fit(p):
    """Least-squares symmetric D with R.S = Q(g, D); returns the residual."""
    n = p.n
    target = p.dot("R", "S")
    cols, idx = [], []
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n))
            e[i, j] = e[j, i] = 1.0
            cols.append(Q(p.g, e).ravel())
            idx.append((i, j))
    M = np.stack(cols, axis=1)
    c, *_ = np.linalg.lstsq(M, target.ravel(), rcond=None)
    return residual(target.ravel(), M @ c)


def _d_holds(s):
    return None if _d_fit(s.pkg) < s.pkg.tol else "R.S is not of the form Q(g, D)"


def _prop41(suffix, hyp, citation):
    return register(f"prop-4.1-{suffix}", citation, requires=all_of(min_dim(4), in_US, in_UC, *hyp))


def _dichotomy(s):
    p = s.pkg
    return min(_quasi_residual(p), linear_combination_fit(p.R, [0.5 * kn(p.S, p.S), kn(p.g, p.S), p.G]).residual)


_prop41("i", [pseudo_holds("L_R", "L_C")], "R.R = L_R Q(g,R) and C.C = L_C Q(g,C) imply quasi-Einstein or Roter")(_dichotomy)
_prop41("ii", [pseudo_holds("L_R", "L")], "R.R = L_R Q(g,R) and R.R - Q(S,R) = L Q(g,C) imply quasi-Einstein or Roter")(
    lambda s: _dichotomy(s)
)
_prop41(
    "iii",
    [pseudo_holds("L_C", "L"), _d_holds],
    "C.C = L_C Q(g,C), R.R - Q(S,R) = L Q(g,C) and R.S = Q(g,D) imply quasi-Einstein or Roter",
)(lambda s: _dichotomy(s))


def _prop45_hyp(s):
    ok = lambda *names: pseudo_holds(*names)(s) is None  # noqa: E731
    if ok("L_R", "L_C") or ok("L_R", "L") or (ok("L_C", "L") and _d_holds(s) is None):
        return None
    return "none of the pseudosymmetry hypotheses holds"


@register("prop-4.5", "pseudosymmetry hypotheses imply E = lambda C", requires=all_of(min_dim(4), in_US, in_UC, _prop45_hyp))
def _p45(s):
    p = s.pkg
    return proportionality_fit(p.E, p.C).residual


# -- warped products and the tau C = E equation ------------------------------


def _quasi_or_roter(s):
    r = s.report
    return None if (r.quasi_einstein is not None or r.roter is not None) else "point is neither quasi-Einstein nor Roter"


@register("prop-5.1", "quasi-Einstein or Roter implies tau C = E", requires=all_of(min_dim(4), in_US, in_UC, _quasi_or_roter))
def _p51(s):
    return proportionality_fit(s.pkg.E, s.pkg.C).residual


@register("theorem-5.2", "warped product with 2-dimensional base and space-form fibre: tau C = E",
          requires=all_of(has_tag("warped-2xN"), min_dim(4), in_US, in_UC))
def _t52(s):
    return proportionality_fit(s.pkg.E, s.pkg.C).residual


def _not_partially_einstein(s):
    fit = linear_combination_fit(s.pkg.S2, [s.pkg.S, s.pkg.g])
    return None if fit.residual > s.pkg.tol else "S2 is a combination of S and g"


@register(
    "example-5.3-iv",
    "C = lambda E and R = lambda g^S2 + (n-2)/2 lambda S^S + (1/(n-2) - kappa lambda) g^S"
    " + ((kappa^2 - tr S2) lambda - kappa/(n-2))/(2(n-1)) g^g",
    requires=all_of(has_tag("warped-2xN"), min_dim(4), in_US, in_UC, _not_partially_einstein),
)
def _e53(s):
    p, n, k = s.pkg, s.n, s.pkg.kappa
    fit = proportionality_fit(p.C, p.E)
    lam = fit.value
    rhs = [
        lam * kn(p.g, p.S2),
        (n - 2) / 2 * lam * kn(p.S, p.S),
        (1 / (n - 2) - k * lam) * kn(p.g, p.S),
        ((k**2 - p.trS2) * lam - k / (n - 2)) / (2 * (n - 1)) * kn(p.g, p.g),
    ]
    return max(fit.residual, eq_residual(p.R, rhs))


# -- essentially conformally symmetric algebraic model ------------------------


def synth_ecs_input(n: int = 4, seed: int = 0, signature: int = 1, rank: int = 1):
    """Random ``(m, S, F)`` with ``S^2 = 0``, ``kappa = 0`` and ``rank S = rank``.

    ``g`` is a generic non-diagonal metric with ``signature`` negative
    directions and ``S`` is built from mutually orthogonal null covectors.
    """
    if n < 4:
        raise ValueError("the model needs n >= 4")
    if signature == 0 or signature == n:
        raise ValueError("the model requires indefinite metric: S^2 = 0 with S != 0 needs null directions")
    if rank not in (1, 2):
        raise ValueError("rank must be 1 or 2")
    if rank == 2 and min(signature, n - signature) < 2:
        raise ValueError("rank 2 needs at least two negative and two positive directions")
    rng = np.random.default_rng(seed)
    eta = np.diag([-1.0] * signature + [1.0] * (n - signature))
    P = np.eye(n) + 0.3 * rng.standard_normal((n, n))
    g = P.T @ eta @ P
    covecs = []
    for k in range(rank):
        w = np.zeros(n)
        w[k] = 1.0
        w[signature + k] = 1.0  # null and mutually orthogonal in the frame
        covecs.append(P.T @ w)
    S = sum(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0) * np.outer(v, v) for v in covecs)
    F = float(rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0))
    return metric_at(g), S, F


def ecs_package(m, S, F, point=None):
    """Curvature package with ``C = S^S/(2F)`` and ``R = C + g^S/(n-2)``."""
    n = m.dim
    C = kn(S, S) / (2 * F)
    R = C + kn(m.g, S) / (n - 2)
    return package_from_curvature(m, R, point=point)


def _ecs(s):
    return s.pkg, s.n, s.extras["F"]


@register("theorem-6.1", "F C = S^S/2 = E/(n-2) and tau C = E with tau = (n-2) F", requires=has_tag("ecs"))
def _t61(s):
    p, n, F = _ecs(s)
    a = eq_residual(F * p.C, 0.5 * kn(p.S, p.S))
    b = eq_residual(F * p.C, p.E / (n - 2))
    c = eq_residual((n - 2) * F * p.C, p.E)
    return max(a, b, c)


@register("ecs-structure", "kappa = 0, S2 = 0, rank S <= 2, Q(S,C) = 0", requires=has_tag("ecs"))
def _ecs_struct(s):
    p, n, F = _ecs(s)
    scale = 1.0 + sup(p.S)
    r = max(abs(p.kappa) / scale, sup(p.S2) / scale**2)
    sv = np.linalg.svd(p.S, compute_uv=False)
    r = max(r, (sv[2] / sv[0]) if sv.size > 2 else 0.0)
    return max(r, sup(p.q("S", "C")) / (1.0 + sup(p.S) * sup(p.C)))
