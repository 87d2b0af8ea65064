"""Random inputs and brute-force index-loop oracles shared by the tests."""

from __future__ import annotations

import itertools

import numpy as np

from curvlab.tensors import kn_product, metric_at


def random_symmetric(rng, n):
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)


def random_metric(rng, n, signature=0):
    """``P^T diag(-1.., 1..) P`` for a random well-conditioned ``P``."""
    P = np.eye(n) + 0.3 * rng.standard_normal((n, n))
    eta = np.diag([-1.0] * signature + [1.0] * (n - signature))
    return metric_at(P.T @ eta @ P)


def well_conditioned_metric(rng, n, signature=0, spread=0.5):
    """``P^T diag(-1.., 1..) P`` with ``P`` orthogonal times ``exp(uniform(-spread, spread))`` scales.

    The condition number of ``g`` is at most ``exp(4 spread)``.
    """
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    P = np.diag(np.exp(rng.uniform(-spread, spread, n))) @ Q
    eta = np.diag([-1.0] * signature + [1.0] * (n - signature))
    return metric_at(P.T @ eta @ P)


def random_curvature(rng, n, terms=3):
    """A generalized curvature tensor: a sum of Kulkarni-Nomizu products."""
    return sum(kn_product(random_symmetric(rng, n), random_symmetric(rng, n)) for _ in range(terms))


def kn_oracle(A, B):
    n = A.shape[0]
    out = np.zeros((n,) * 4)
    for a, b, c, d in itertools.product(range(n), repeat=4):
        out[a, b, c, d] = A[a, d] * B[b, c] + A[b, c] * B[a, d] - A[a, c] * B[b, d] - A[b, d] * B[a, c]
    return out


def _wedge_apply(A, x, y, z, n):
    """Components of ``(e_x ^_A e_y) e_z`` as a vector."""
    v = np.zeros(n)
    v[x] += A[y, z]
    v[y] -= A[x, z]
    return v


def tachibana_oracle(A, T):
    """``Q(A,T)(..; x, y) = -sum_j T(.., (e_x ^_A e_y) e_{i_j}, ..)`` by explicit slot substitution."""
    n, k = T.shape[0], T.ndim
    out = np.zeros((n,) * (k + 2))
    for idx in itertools.product(range(n), repeat=k):
        for x, y in itertools.product(range(n), repeat=2):
            total = 0.0
            for j in range(k):
                v = _wedge_apply(A, x, y, idx[j], n)
                for t in range(n):
                    if v[t]:
                        sub = idx[:j] + (t,) + idx[j + 1:]
                        total -= v[t] * T[sub]
            out[idx + (x, y)] = total
    return out


def action_oracle(B, T, m):
    """``(B.T)(..; x, y) = -sum_j T(.., B(e_x, e_y) e_{i_j}, ..)`` with ``B(X,Y)Z = B(X,Y,Z,.)^#``."""
    n, k = T.shape[0], T.ndim
    out = np.zeros((n,) * (k + 2))
    for idx in itertools.product(range(n), repeat=k):
        for x, y in itertools.product(range(n), repeat=2):
            total = 0.0
            for j in range(k):
                z = idx[j]
                for t in range(n):
                    coef = sum(B[x, y, z, d] * m.g_inv[d, t] for d in range(n))
                    sub = idx[:j] + (t,) + idx[j + 1:]
                    total -= coef * T[sub]
            out[idx + (x, y)] = total
    return out
