from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab import charts as ch
from curvlab import jet
from curvlab.chartfile import load_chart
from curvlab.charts import evaluate_package, metric_derivatives, metric_derivatives_fd, sample_points
from curvlab.fitting import sup
from curvlab.tensors import curvature_defect, ricci_of, trace_g

DATA = ch.__file__.rsplit("/", 1)[0] + "/data"


def all_builtin_charts():
    return [
        ch.constant_curvature(4, 12.0),
        ch.constant_curvature(3, -6.0),
        ch.sphere_product(2, 1.0, 2.0, n=4),
        ch.sphere_product(2, 1.0, 3.0, n=5),
        ch.warped_1xN(4),
        ch.warped_1xN(5, F="cosh", base="lorentzian"),
        ch.warped_2xN(4),
        ch.warped_2xN(5, F="quadratic", base="flat"),
        ch.warped_2xN(4, base="lorentzian"),
        ch.rn_desitter(1.0, 0.5, 0.3),
        ch.rn_desitter(1.0, 0.5, 0.0),
        load_chart(f"{DATA}/tilted3.chart"),
        load_chart(f"{DATA}/lorentz4.chart"),
    ]


@given(st.floats(-2, 2), st.floats(0.2, 2))
def test_jet_matches_analytic_derivatives(a, b):
    x, y = jet.Jet.variables([a, b])
    f = jet.sin(x * y) + jet.exp(x) / y + y**3
    v, d, h = jet.derivatives(f, 2)
    assert math.isclose(v, math.sin(a * b) + math.exp(a) / b + b**3, rel_tol=1e-12, abs_tol=1e-12)
    assert np.allclose(d, [b * math.cos(a * b) + math.exp(a) / b, a * math.cos(a * b) - math.exp(a) / b**2 + 3 * b**2], rtol=1e-12, atol=1e-12)
    hxy = math.cos(a * b) - a * b * math.sin(a * b) - math.exp(a) / b**2
    assert math.isclose(h[0, 1], hxy, rel_tol=1e-10, abs_tol=1e-12) and h[0, 1] == h[1, 0]


def fd_error(chart, x, **kw):
    g, dg, d2g = metric_derivatives(chart, x)
    _, fdg, fd2g = metric_derivatives_fd(chart, x, **kw)
    return max(sup(dg - fdg) / (1 + sup(dg)), sup(d2g - fd2g) / (1 + sup(d2g)))


@pytest.mark.parametrize("chart", all_builtin_charts(), ids=lambda c: f"{c.name}-{c.dim}")
def test_ad_matches_finite_differences(chart):
    for x in sample_points(chart, 3, seed=1):
        g, dg, d2g = metric_derivatives(chart, x)
        _, fdg, fd2g = metric_derivatives_fd(chart, x, step=1e-4)
        assert sup(dg - fdg) <= 1e-6 * (1 + sup(dg))
        assert sup(d2g - fd2g) <= 1e-6 * (1 + sup(d2g))


@pytest.mark.parametrize("chart", all_builtin_charts(), ids=lambda c: f"{c.name}-{c.dim}")
def test_package_invariants(chart):
    for x in sample_points(chart, 3, seed=2):
        p = evaluate_package(chart, x)
        assert curvature_defect(p.R) < 1e-10 * (1 + sup(p.R))
        assert sup(ricci_of(p.R, p.m) - p.S) < 1e-10 * (1 + sup(p.S))
        assert abs(trace_g(p.S, p.m) - p.kappa) < 1e-10 * (1 + abs(p.kappa))
        if p.n >= 4:
            assert sup(ricci_of(p.C, p.m)) < 1e-10 * (1 + sup(p.R))
            assert p.in_UR == (p.in_US or p.in_UC)
        assert np.allclose(p.gamma, np.swapaxes(p.gamma, 1, 2))


def test_round_sphere():
    c = ch.constant_curvature(4, 12.0)
    for x in sample_points(c, 5, seed=0):
        p = evaluate_package(c, x)
        assert abs(p.kappa - 12) < 1e-8
        assert sup(p.C) < 1e-8 and sup(p.E) < 1e-8
        assert sup(p.R - p.G) < 1e-8
        assert not p.in_US and not p.in_UC and not p.in_UR


def test_flat_chart_is_flat():
    c = ch.builtin_chart("flat", n=4)
    p = evaluate_package(c, sample_points(c, 1, 0)[0])
    assert sup(p.R) < 1e-13


def test_sphere_product_sets():
    c = ch.sphere_product(2, 1.0, 2.0, n=4)
    p = evaluate_package(c, sample_points(c, 1, 0)[0])
    assert p.in_US and p.in_UC


def test_rn_lambda_zero_is_reissner_nordstrom():
    a, b = ch.rn_desitter(1.0, 0.5, 0.0), ch.rn_desitter(1.0, 0.5, 1e-300)
    x = [0.3, 5.0, 1.0, 0.4]
    assert np.array_equal(a.metric(x), b.metric(x))
    h = 1 - 2 / 5.0 + 0.25 / 25
    assert np.allclose(np.diag(a.metric(x)), [-h, 1 / h, 25, 25 * math.sin(1.0) ** 2])


def test_rn_band_clears_h():
    c = ch.rn_desitter(1.0, 0.5, 0.3)
    lo, hi = c.params["band"]
    r = np.linspace(lo, hi, 2000)
    assert np.all(ch.rn_h(r, 1.0, 0.5, 0.3) > 0.01)
    for x in sample_points(c, 25, seed=3):
        assert ch.rn_h(x[1], 1.0, 0.5, 0.3) > 0.01


def test_sampling_is_deterministic_and_clamped():
    c = ch.sphere_product(2, 1.0, 2.0, n=4)
    a, b = sample_points(c, 10, seed=4), sample_points(c, 10, seed=4)
    assert np.array_equal(np.array(a), np.array(b))
    assert not np.array_equal(np.array(a), np.array(sample_points(c, 10, seed=5)))
    for x in sample_points(ch.constant_curvature(4, 12.0), 50, seed=0):
        assert all(0.1 <= t <= math.pi - 0.1 for t in x[:2])


def test_guard_and_errors():
    c = ch.rn_desitter(1.0, 0.5, 0.0)
    with pytest.raises(ch.GuardError):
        evaluate_package(c, [0.0, 1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        ch.builtin_chart("no-such-chart")
    with pytest.raises(ValueError):
        ch.sphere_product(2, -1.0, 2.0)
    hopeless = ch.rn_desitter(1.0, 0.5, 100.0, band=(3.0, 4.0))
    with pytest.raises(ch.GuardRegionError):
        sample_points(hopeless, 1)
    with pytest.raises(ch.GuardRegionError):
        ch.rn_band(1.0, 0.5, 0.0, r_min=1.0, r_max=1.5)


def test_declared_signature_is_checked():
    chart = load_chart(f"{DATA}/lorentz4.chart")
    assert chart.signature == 1
    p = evaluate_package(chart, sample_points(chart, 1, 0)[0])
    assert p.m.signature == 1


@settings(max_examples=20, deadline=None)
@given(st.floats(0.5, 3.0), st.floats(0.5, 3.0))
def test_sphere_product_roter_coefficients(r1, r2):
    """Products of two round 2-spheres: R fits the Roter basis unless the radii make it Einstein."""
    from curvlab.classify import roter_fit

    c = ch.sphere_product(2, r1, r2, n=4)
    p = evaluate_package(c, sample_points(c, 1, 0)[0])
    if abs(r1 - r2) > 1e-2:
        assert roter_fit(p).residual < 1e-8


def test_radial_step_scaling_on_steep_band():
    """Inside the charged de Sitter band the metric varies on the scale min(r, h/h'); an
    unscaled step misses that, and its error shrinks fourfold per halving toward the jets."""
    import dataclasses

    c = ch.rn_desitter(1.0, 0.5, 0.3)
    flat_step = dataclasses.replace(c, fd_scale=None)
    worst = 0.0
    for x in sample_points(c, 10, seed=0):
        worst = max(worst, fd_error(c, x))
        e1, e2 = fd_error(flat_step, x, step=1e-4), fd_error(flat_step, x, step=5e-5)
        if e1 > 1e-5:
            assert 3.0 < e1 / e2 < 5.0
            assert fd_error(flat_step, x, step=1e-4, richardson=True) < 1e-2 * e1
    assert worst < 1e-6


def test_rn_length_scale():
    r = 0.05
    assert ch.rn_length_scale(r, 1.0, 0.5, 0.0) <= r
    M, Q = 1.0, 0.5
    r_inner = M - math.sqrt(M**2 - Q**2)
    assert ch.rn_length_scale(r_inner - 1e-3, M, Q, 0.0) < 2e-3
