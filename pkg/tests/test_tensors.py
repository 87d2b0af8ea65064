from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab import tensors as tc
from curvlab.fitting import sup
from curvlab.tensors import kn_product as kn
from curvlab.tensors import tachibana as Q

from helpers import action_oracle, kn_oracle, random_curvature, random_metric, random_symmetric, tachibana_oracle

seeds = st.integers(0, 2**32 - 1)
dims = st.sampled_from([4, 5, 6])


def rel(a, b):
    return sup(a - b) / (1 + max(sup(a), sup(b)))


def test_kn_product_components():
    g = np.eye(4)
    G2 = kn(g, g)
    assert G2[0, 1, 1, 0] == 2 and G2[0, 1, 0, 1] == -2 and G2[0, 0, 1, 1] == 0


def test_kn_product_dimension_mismatch():
    with pytest.raises(ValueError):
        kn(np.eye(3), np.eye(4))


@given(seeds, dims)
def test_kn_product_symmetric_and_curvature_type(seed, n):
    rng = np.random.default_rng(seed)
    A, B = random_symmetric(rng, n), random_symmetric(rng, n)
    T = kn(A, B)
    assert rel(T, kn(B, A)) < 1e-15
    assert tc.curvature_defect(T) < 1e-13 * (1 + sup(T))


def test_oracles_n4():
    rng = np.random.default_rng(7)
    m = random_metric(rng, 4, signature=1)
    for _ in range(20):
        A, B = random_symmetric(rng, 4), random_symmetric(rng, 4)
        R = random_curvature(rng, 4)
        assert np.max(np.abs(kn(A, B) - kn_oracle(A, B))) < 1e-13
        for T in (B, R):
            assert np.max(np.abs(Q(A, T) - tachibana_oracle(A, T))) < 1e-13
            assert np.max(np.abs(tc.curvature_action(R, T, m) - action_oracle(R, T, m))) < 1e-12


def test_kn_wedge_general_reduces_to_kn_product():
    rng = np.random.default_rng(1)
    for _ in range(100):
        A, B = random_symmetric(rng, 4), random_symmetric(rng, 4)
        assert np.allclose(tc.kn_wedge_general(A, B), kn(A, B), rtol=0, atol=1e-14)


def test_kn_wedge_general_rejects_valence():
    with pytest.raises(ValueError):
        tc.kn_wedge_general(np.eye(4), np.zeros((4, 4, 4)))


def test_metric_power_and_trace():
    m = tc.metric_at(np.eye(4))
    A = np.diag([1.0, 2, 3, 4])
    assert np.allclose(tc.metric_power(A, 2, m), np.diag([1.0, 4, 9, 16]))
    assert tc.trace_g(A, m) == 10
    assert tc.trace_g(m.g, m) == 4
    lor = tc.metric_at(np.diag([-1.0, 1, 1, 1]))
    assert tc.trace_g(np.eye(4), lor) == 2
    assert np.allclose(tc.metric_power(lor.g, 3, lor), lor.g)


def test_metric_power_associativity():
    rng = np.random.default_rng(2)
    m = random_metric(rng, 5, signature=2)
    A = random_symmetric(rng, 5)
    A2 = tc.metric_power(A, 2, m)
    left = A2 @ m.g_inv @ A
    right = A @ m.g_inv @ A2
    assert rel(left, right) < 1e-13
    assert rel(tc.metric_power(A, 3, m), left) < 1e-13


def test_metric_at_rejects_singular():
    with pytest.raises(ValueError):
        tc.metric_at(np.diag([1.0, 1.0, 0.0]))


def test_tachibana_basics():
    g = np.eye(5)
    assert sup(Q(g, kn(g, g))) == 0
    with pytest.raises(ValueError):
        Q(g, np.zeros((5, 5, 5)))


@settings(max_examples=50)
@given(seeds, dims)
def test_product_rules(seed, n):
    rng = np.random.default_rng(seed)
    A, B, A1, A2 = (random_symmetric(rng, n) for _ in range(4))
    rhs = -0.5 * Q(B, kn(A, A))
    assert rel(Q(A, kn(A, B)), rhs) < 1e-12
    assert rel(tc.kn_wedge_general(A, Q(A, B)), rhs) < 1e-12
    three = tc.kn_wedge_general(A1, Q(A2, B)) + tc.kn_wedge_general(A2, Q(A1, B)) + Q(B, kn(A1, A2))
    assert sup(three) < 1e-12 * (1 + sup(Q(B, kn(A1, A2))))
    cyc = Q(B, kn(A1, A2)) + Q(A1, kn(A2, B)) + Q(A2, kn(B, A1))
    assert sup(cyc) < 1e-12 * (1 + sup(Q(B, kn(A1, A2))))


@settings(max_examples=50)
@given(seeds, dims, st.integers(0, 2))
def test_derivation_outputs_are_antisymmetric_in_last_pair(seed, n, sig):
    rng = np.random.default_rng(seed)
    m = random_metric(rng, n, signature=sig)
    A, R = random_symmetric(rng, n), random_curvature(rng, n)
    for T in (Q(A, R), tc.curvature_action(R, R, m), Q(A, A), tc.curvature_action(R, A, m)):
        assert tc.derivation_defect(T) < 1e-13 * (1 + sup(T))


@settings(max_examples=30)
@given(seeds, dims, st.integers(0, 2))
def test_curvature_action_kills_metric(seed, n, sig):
    rng = np.random.default_rng(seed)
    m = random_metric(rng, n, signature=sig)
    R = random_curvature(rng, n)
    assert sup(tc.curvature_action(R, m.g, m)) < 1e-12 * (1 + sup(R))


def test_G_action_equals_Q_g():
    """With ``B.T`` and ``Q(A,T)`` both carrying the minus sign, ``G.T = Q(g,T)``."""
    rng = np.random.default_rng(3)
    m = random_metric(rng, 4, signature=1)
    G = 0.5 * kn(m.g, m.g)
    for T in (random_symmetric(rng, 4), random_curvature(rng, 4)):
        assert rel(tc.curvature_action(G, T, m), Q(m.g, T)) < 1e-13


def test_ricci_weyl_of_constant_curvature():
    for n in (4, 5, 6):
        m = tc.metric_at(np.eye(n))
        S, k, W = tc.ricci_kappa_weyl_of(0.5 * kn(m.g, m.g), m)
        assert np.allclose(S, (n - 1) * m.g) and abs(k - n * (n - 1)) < 1e-12 and sup(W) < 1e-13


def test_weyl_requires_n4():
    m = tc.metric_at(np.eye(3))
    with pytest.raises(ValueError):
        tc.weyl_of(np.zeros((3,) * 4), m)


@settings(max_examples=30)
@given(seeds, dims, st.integers(0, 2))
def test_weyl_is_traceless(seed, n, sig):
    rng = np.random.default_rng(seed)
    m = random_metric(rng, n, signature=sig)
    W = tc.weyl_of(random_curvature(rng, n), m)
    assert sup(tc.ricci_of(W, m)) < 1e-12 * (1 + sup(W))


@settings(max_examples=30)
@given(seeds, dims, st.integers(0, 2))
def test_E_is_traceless_and_matches_definition(seed, n, sig):
    rng = np.random.default_rng(seed)
    m = random_metric(rng, n, signature=sig)
    A = random_symmetric(rng, n)
    E = tc.build_E_of(A, m)
    assert sup(tc.ricci_of(E, m)) < 1e-12 * (1 + sup(E))
    assert rel(E, tc.build_E(m, A)) == 0
    assert tc.curvature_defect(E) < 1e-12 * (1 + sup(E))


def test_E_vanishing_cases():
    rng = np.random.default_rng(4)
    m = random_metric(rng, 5, signature=1)
    assert sup(tc.build_E_of(m.g, m)) < 1e-12
    assert sup(tc.build_E(m, 3.0 * m.g)) < 1e-12
    w = rng.standard_normal(5)
    A = 0.7 * m.g - 1.3 * np.outer(w, w)
    assert sup(tc.build_E_of(A, m)) < 1e-10 * (1 + sup(kn(A, A)))
    m3 = random_metric(rng, 3)
    assert sup(tc.build_E_of(random_symmetric(rng, 3), m3)) < 1e-12


def test_weyl_of_five_term_combination():
    rng = np.random.default_rng(5)
    for n in (4, 5, 6):
        m = random_metric(rng, n, signature=n % 2)
        R = random_curvature(rng, n)
        S = tc.ricci_of(R, m)
        S = 0.5 * (S + S.T)
        S2 = tc.metric_power(S, 2, m)
        a = rng.uniform(-2, 2, 5)
        T = a[0] * R + a[1] / 2 * kn(S, S) + a[2] * kn(m.g, S) + a[3] * kn(m.g, S2) + a[4] / 2 * kn(m.g, m.g)
        rhs = a[0] * tc.weyl_of(R, m) + a[1] / (n - 2) * tc.build_E(m, S)
        assert rel(tc.weyl_of(T, m), rhs) < 1e-10
