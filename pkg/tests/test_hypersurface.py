from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab import hypersurface as hs
from curvlab.checks import REGISTRY, run_checks
from curvlab.chartfile import load_samples
from curvlab.classify import classify_point
from curvlab.cli import DATA
from curvlab.fitting import sup

seeds = st.integers(0, 2**32 - 1)


def rel(a, b):
    return sup(a - b) / (1 + max(sup(a), sup(b)))


def _sym(rng, n):
    A = rng.normal(size=(n, n))
    return 0.5 * (A + A.T)


def _file_samples(name):
    return [hs.from_sample(s) for s in load_samples(DATA / name)]


def test_zero_H_gives_constant_curvature():
    hd = hs.make_hypersurface(np.zeros((4, 4)), ambient_kappa=20.0)
    pkg = hs.gauss_package(hd)
    assert abs(pkg.kappa - 4 * 3 * 20.0 / 20.0) < 1e-12
    assert sup(pkg.C) < 1e-14 and classify_point(pkg).verdict == "einstein"


def test_umbilical_has_no_weyl():
    hd = g = np.diag([-1.0, 1, 1, 1, 1])
    hd = hs.make_hypersurface(1.7 * g, eps=-1, ambient_kappa=3.0, g=g)
    assert hd.umbilical
    assert sup(hs.gauss_package(hd).C) < 1e-13


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([4, 5, 6]), st.sampled_from([1, -1]))
def test_gauss_contraction_random(seed, n, eps):
    rng = np.random.default_rng(seed)
    hd = hs.make_hypersurface(_sym(rng, n), eps=eps, ambient_kappa=float(rng.uniform(-5, 5)))
    assert hs.gauss_consistency(hd) < 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([4, 5, 6]), st.sampled_from([0, 1]))
def test_weyl_from_H_matches_gauss(seed, n, sig):
    rng = np.random.default_rng(seed)
    g, H = hs.random_frame(n, sig, rng)
    hd = hs.make_hypersurface(H, eps=int(rng.choice([-1, 1])), ambient_kappa=float(rng.uniform(-5, 5)), g=g)
    assert rel(hs.gauss_package(hd).C, hs.weyl_from_H(hd)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_cubic_recovers_prescribed_roots(seed):
    # eigenvalues x1 (twice), x2, -x1 (twice): their sum equals tr(H), so the
    # monic cubic with these roots is x^3 - tr(H) x^2 - psi x - rho with
    # psi = x1^2 and rho = -x1^2 x2
    rng = np.random.default_rng(seed)
    x1, x2 = rng.uniform(0.3, 2.0), rng.uniform(-2.0, 2.0)
    if min(abs(x2 - x1), abs(x2 + x1)) < 0.1:
        return
    Q, _ = np.linalg.qr(rng.normal(size=(5, 5)))
    hd = hs.make_hypersurface(Q @ np.diag([x1, x1, x2, -x1, -x1]) @ Q.T)
    fit = hs.h_cubic_fit(hd)
    assert fit.residual < 1e-12
    assert abs(fit.psi - x1**2) < 1e-10 * (1 + x1**2)
    assert abs(fit.rho + x1**2 * x2) < 1e-10 * (1 + abs(x1**2 * x2))


def test_cubic_fails_for_inconsistent_trace():
    hd = hs.make_hypersurface(np.diag([1.0, 1.0, 2.0, -0.5, -0.5]))
    assert hs.h_cubic_fit(hd).residual > 1e-6


def test_generic_five_fails_cubic():
    hd = next(h for h in _file_samples("u_h.hyp") if h.name == "generic-5")
    assert hs.h_cubic_fit(hd).residual > 1e-6 and hs.h_cubic_fit(hd, with_rho=False).residual > 1e-6
    assert hd.in_UH


def test_weyl_vanishing_biconditional_table():
    rows = hs.theorem_71_table(200, seed=0)
    bad = [r for r in rows if not r["umbilical"] and r["quasi_umbilical"] != r["weyl_vanishes"]]
    assert not bad
    kinds = {r["kind"] for r in rows if r["weyl_vanishes"]}
    assert "quasi-umbilical" in kinds and "perturbed" not in kinds


def test_u_h_points_are_in_US_and_UC():
    for hd in _file_samples("u_h.hyp"):
        if hd.in_UH:
            rep = classify_point(hs.gauss_package(hd))
            assert rep.in_US and rep.in_UC, hd.name


@pytest.mark.parametrize("a, b, eps, kt", [(1.5, -0.5, 1, 0.0), (0.7, 2.0, 1, 6.0), (1.2, -0.4, -1, -4.0), (0.0, 1.3, 1, 2.0)])
def test_two_eigenvalue_identities(a, b, eps, kt):
    hd = hs.make_hypersurface(np.diag([a, a, b, b]), eps=eps, ambient_kappa=kt)
    assert not hd.in_UH
    ids = ["remark-7.2-i"] + (["theorem-8.3-i"] if a == 0 else [])
    for r in run_checks([hs.hyper_sample(hd)], [REGISTRY[c] for c in ids]):
        assert r["skipped"] is None and r["residual"] < 1e-8, r


def test_two_eigenvalue_without_zero_is_einstein_under_cubic():
    # H^3 = tr(H) H^2 + psi H with nonzero eigenvalues a, b forces a + b = tr(H),
    # so tr(H) H - H^2 = -psi g and the point leaves U_S
    hd = hs.make_hypersurface(np.diag([1.0, 1.0, -1.0, -1.0]), ambient_kappa=3.0)
    assert hs.h_cubic_fit(hd, with_rho=False).residual < 1e-12
    assert not classify_point(hs.gauss_package(hd)).in_US


def test_two_eigenvalue_file_checks():
    samples = [hs.hyper_sample(hd) for hd in _file_samples("two_eigenvalue.hyp")]
    rows = run_checks(samples, [REGISTRY[c] for c in hs.HYPERSURFACE_CHECKS])
    assert all(r["pass"] is not False for r in rows)
    done = {r["check"] for r in rows if r["skipped"] is None}
    assert {"remark-7.2-i", "theorem-8.3-i", "section-8-l-fit"} <= done


def test_l_fit_value():
    for hd in _file_samples("two_eigenvalue.hyp") + _file_samples("u_h.hyp"):
        rep = classify_point(hs.gauss_package(hd))
        if not rep.in_UC:
            continue
        n = hd.n
        expected = -(n - 2) * hd.ambient_kappa / (n * (n + 1))
        assert abs(rep.pseudo["L"].value - expected) < 1e-7 * (1 + abs(expected)), hd.name


def test_check_hyp_identities_report():
    hd = next(h for h in _file_samples("u_h.hyp") if h.name == "uh-00ab")
    out = hs.check_hyp_identities(hd)
    assert out["in_UH"] and out["in_US"] and out["in_UC"]
    assert all(r["pass"] is not False for r in out["rows"])
    assert set(out["t_fits"]) == set(hs.T_TARGETS)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        hs.make_hypersurface(np.eye(4), eps=2)
    with pytest.raises(ValueError):
        hs.make_hypersurface(np.arange(16.0).reshape(4, 4))
