from __future__ import annotations

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab.fitting import linear_combination_fit, numerical_rank, proportionality_fit, rank_shift, residual
from curvlab.tensors import metric_at

from helpers import random_curvature, random_symmetric


def test_residual_is_scale_invariant_and_symmetric():
    a, b = np.array([1.0, 2.0]), np.array([1.0, 2.5])
    assert residual(a, b) == residual(b, a) == 0.5 / 3.5


def test_proportionality_exact_and_orthogonal():
    rng = np.random.default_rng(0)
    T = random_curvature(rng, 4)
    fit = proportionality_fit(3 * T, T)
    assert abs(fit.value - 3) < 1e-13 and fit.residual < 1e-13
    e1, e2 = np.zeros(4), np.zeros(4)
    e1[0], e2[1] = 1, 1
    assert proportionality_fit(e1, e2).value == 0


def test_proportionality_degenerate_and_vacuous():
    z = np.zeros((3, 3))
    fit = proportionality_fit(z, z)
    assert fit.degenerate and fit.vacuous and fit.holds(1e-7)
    fit = proportionality_fit(np.eye(3), z)
    assert fit.degenerate and not fit.vacuous and not fit.holds(1e-7)


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_linear_combination_recovers_span(seed, k):
    rng = np.random.default_rng(seed)
    basis = [random_symmetric(rng, 5) for _ in range(k)]
    c = rng.uniform(-3, 3, k)
    fit = linear_combination_fit(sum(ci * b for ci, b in zip(c, basis)), basis)
    assert fit.residual < 1e-12
    assert np.allclose(fit.coeffs, c, atol=1e-9)


def test_linear_combination_orthogonal_target():
    e = [np.diag(v) for v in np.eye(3)]
    fit = linear_combination_fit(e[2], e[:2])
    assert np.allclose(fit.coeffs, 0) and abs(fit.residual - 0.5) < 1e-15


def test_linear_combination_rank_deficient_min_norm():
    b = np.diag([1.0, 2.0, 3.0])
    fit = linear_combination_fit(2 * b, [b, b])
    assert fit.rank_deficient and fit.rank == 1
    assert np.allclose(fit.coeffs, [1, 1]) and fit.residual < 1e-14


def test_rank_shift_examples():
    m = metric_at(np.eye(4))
    assert rank_shift(m.g, m).best == (1.0, 0)
    assert rank_shift(np.diag([5.0, 2, 2, 2]), m).best == (2.0, 1)
    rs = rank_shift(np.diag([5.0, 5, 2, 2]), m)
    assert [c for c in rs.candidates] == [(2.0, 2), (5.0, 2)]


def test_rank_shift_complex_spectrum_flagged():
    m = metric_at(np.diag([-1.0, 1, 1, 1]))
    A = np.array([[0, 1.0, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]])
    rs = rank_shift(A, m)
    assert rs.complex_spectrum
    assert sorted(a for a, _ in rs.candidates) == [1.0, 2.0]


def test_numerical_rank_threshold():
    assert numerical_rank(np.diag([1.0, 1e-7, 1e-9])) == 2
