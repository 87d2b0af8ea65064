from __future__ import annotations

import numpy as np
import pytest

from curvlab.charts import constant_curvature, evaluate_package, rn_desitter, sample_points, sphere_product, warped_2xN
from curvlab.classify import VERDICTS, classify_point, roter_closed_forms, roter_fit
from curvlab.package import package_from_parts
from curvlab.tensors import kn_product, metric_at


def _first(chart, k=0):
    return evaluate_package(chart, sample_points(chart, k + 1, 0)[k])


def test_constant_curvature_is_einstein():
    rep = classify_point(_first(constant_curvature(4, 12.0)))
    assert rep.verdict == "einstein" and rep.einstein and not rep.in_US


def test_sphere_product_is_roter():
    pkg = _first(sphere_product(2, 1.0, 2.0, n=4))
    rep = classify_point(pkg)
    assert rep.verdict == "roter" and rep.in_US and rep.in_UC
    assert rep.roter_residual < 1e-10
    phi, mu, eta = rep.roter
    cf = roter_closed_forms(pkg.n, pkg.kappa, phi, mu, eta)
    a1, a2 = rep.partially_einstein
    assert abs(cf["alpha1"] - a1) < 1e-9 and abs(cf["alpha2"] - a2) < 1e-9
    for name in ("L_R", "L_C", "L"):
        assert abs(rep.pseudo[name].value - cf[name]) < 1e-9 * (1 + abs(cf[name]))
    assert abs(rep.pseudo["L_S"].value - cf["L_R"]) < 1e-9 and abs(rep.pseudo["L_1"].value - cf["L_R"]) < 1e-9


def test_rn_is_roter():
    for lam in (0.0, 0.3):
        rep = classify_point(_first(rn_desitter(1.0, 0.5, lam)))
        assert rep.verdict == "roter"


def test_quasi_einstein_model():
    # Ric of a combination of g^g and g^S is again alpha' g + c w w^T
    m = metric_at(np.diag([1.0, 1.0, 1.0, 1.0]))
    w = np.array([1.0, 2.0, 0.0, 0.5])
    alpha = 0.7
    S = alpha * m.g + np.outer(w, w)
    R = 0.3 * kn_product(m.g, m.g) + 0.2 * kn_product(m.g, S)
    R_S = np.einsum("ab,aijb->ij", m.g_inv, R)
    pkg = package_from_parts(m, R, R_S)
    rep = classify_point(pkg)
    ev = np.linalg.eigvalsh(pkg.S)
    assert rep.verdict == "quasi-einstein"
    assert np.min(np.abs(ev - rep.quasi_einstein)) < 1e-8


def test_warped_points_are_classified():
    chart = warped_2xN(4)
    for x in sample_points(chart, 5, 1):
        assert classify_point(evaluate_package(chart, x)).verdict in VERDICTS


def test_roter_fit_rejects_generic_tensor():
    rng = np.random.default_rng(4)
    m = metric_at(np.eye(4))
    A, B = (lambda X: X + X.T)(rng.normal(size=(4, 4))), (lambda X: X + X.T)(rng.normal(size=(4, 4)))
    R = kn_product(A, A) + kn_product(B, B) + kn_product(A, B)
    S = np.einsum("ab,aijb->ij", m.g_inv, R)
    pkg = package_from_parts(m, R, S)
    assert roter_fit(pkg).residual > 1e-3
    assert classify_point(pkg).verdict in ("generic", "generalized-roter", "partially-einstein")


@pytest.mark.parametrize("n, kappa", [(4, 2.0), (5, -3.0), (6, 0.7)])
def test_closed_forms_self_consistent(n, kappa):
    phi, mu, eta = 0.8, -0.3, 1.1
    cf = roter_closed_forms(n, kappa, phi, mu, eta)
    assert abs(cf["L"] - cf["L_R"] - mu / phi) < 1e-14
