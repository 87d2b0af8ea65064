"""Pointwise multilinear algebra on a single tangent space.

Tensors are plain dense ``numpy`` arrays of covariant components. A (0,2)
tensor has shape ``(n, n)``, a generalized curvature tensor ``(n, n, n, n)``
and the derivation-type results ``B.T`` / ``Q(A, T)`` of a (0,4) tensor have
shape ``(n,)*6`` with the two "direction" slots last.

Index conventions
-----------------
* ``(A ^ B)[a,b,c,d] = A[a,d]B[b,c] + A[b,c]B[a,d] - A[a,c]B[b,d] - A[b,d]B[a,c]``
* ``G = (g ^ g) / 2`` so ``G[a,b,c,d] = g[a,d]g[b,c] - g[a,c]g[b,d]``
* ``Ric(T)[i,j] = g^{ab} T[a,i,j,b]``, which gives ``Ric(G) = (n-1) g``.
* The endomorphism of a curvature tensor ``B`` is obtained by raising the last
  slot: ``B(X,Y)Z = B[x,y,z,d] g^{de} e_e``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_LETTERS = "abcdefghijklmnopqrstuvw"


@dataclass(frozen=True)
class MetricAtPoint:
    """Metric components at one point together with the inverse and signature."""

    g: np.ndarray
    g_inv: np.ndarray
    signature: int

    @property
    def dim(self) -> int:
        return self.g.shape[0]


def metric_at(g, check: bool = True) -> MetricAtPoint:
    """Build a :class:`MetricAtPoint` from symmetric metric components."""
    g = np.array(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] < 2:
        raise ValueError(f"metric must be a square matrix with n >= 2, got shape {g.shape}")
    if check and np.max(np.abs(g - g.T)) > 1e-12 * (1.0 + np.max(np.abs(g))):
        raise ValueError("metric is not symmetric")
    g = 0.5 * (g + g.T)
    eig = np.linalg.eigvalsh(g)
    if np.min(np.abs(eig)) <= 1e-14 * max(1.0, np.max(np.abs(eig))):
        raise np.linalg.LinAlgError("metric is singular")
    g_inv = np.linalg.inv(g)
    g_inv = 0.5 * (g_inv + g_inv.T)
    if check:
        err = np.max(np.abs(g @ g_inv - np.eye(g.shape[0])))
        if err > 1e-12 * np.linalg.cond(g):
            raise np.linalg.LinAlgError(f"metric inverse inaccurate ({err:.2e})")
    return MetricAtPoint(g=g, g_inv=g_inv, signature=int(np.sum(eig < 0)))


def _same_dim(*tensors) -> int:
    dims = {t.shape[0] for t in tensors}
    if len(dims) != 1 or any(set(t.shape) != dims for t in tensors):
        raise ValueError(f"dimension mismatch: {[t.shape for t in tensors]}")
    return dims.pop()


def kn_product(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kulkarni-Nomizu product of two symmetric (0,2) tensors."""
    _same_dim(A, B)
    out = np.einsum("ad,bc->abcd", A, B)
    out += np.einsum("bc,ad->abcd", A, B)
    out -= np.einsum("ac,bd->abcd", A, B)
    out -= np.einsum("bd,ac->abcd", A, B)
    return out


def kn_wedge_general(A: np.ndarray, T: np.ndarray) -> np.ndarray:
    """``A ^ T`` for a (0,k) tensor ``T``, k in {2, 4}; trailing slots of ``T`` ride along."""
    if T.ndim not in (2, 4):
        raise ValueError(f"unsupported valence {T.ndim} for A ^ T (expected 2 or 4)")
    _same_dim(A, T)
    if T.ndim == 2:
        return kn_product(A, T)
    out = np.einsum("ad,bc...->abcd...", A, T)
    out += np.einsum("bc,ad...->abcd...", A, T)
    out -= np.einsum("ac,bd...->abcd...", A, T)
    out -= np.einsum("bd,ac...->abcd...", A, T)
    return out


def metric_power(A: np.ndarray, p: int, m: MetricAtPoint) -> np.ndarray:
    """``A^p`` with ``A^p(X, Y) = A^{p-1}(AX, Y)``; the operator is raised with ``g^{-1}``."""
    if p < 1:
        raise ValueError("power must be >= 1")
    _same_dim(A, m.g)
    out = A
    for _ in range(p - 1):
        out = out @ m.g_inv @ A
    return 0.5 * (out + out.T)


def trace_g(A: np.ndarray, m: MetricAtPoint) -> float:
    return float(np.einsum("ij,ij->", m.g_inv, A))


def _slot_sum(T: np.ndarray, op: np.ndarray) -> np.ndarray:
    """``sum_j`` of ``T`` with slot ``j`` mapped through ``op[x, y, s, t]`` (slot index ``s`` -> ``t``)."""
    k = T.ndim
    letters = _LETTERS[:k]
    out_sub = letters + "xy"
    out = np.zeros((T.shape[0],) * (k + 2))
    for j in range(k):
        t_sub = letters[:j] + "t" + letters[j + 1:]
        out += np.einsum(f"{t_sub},xy{letters[j]}t->{out_sub}", T, op, optimize=True)
    return out


def tachibana(A: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Tachibana tensor ``Q(A, T)`` for a (0,k) tensor ``T``, k in {2, 4}.

    ``Q(A,T)(X_1..X_k; X, Y) = -sum_j T(.., (X ^_A Y) X_j, ..)`` with
    ``(X ^_A Y) Z = A(Y, Z) X - A(X, Z) Y``.
    """
    if T.ndim not in (2, 4):
        raise ValueError(f"unsupported valence {T.ndim} for Q(A, T) (expected 2 or 4)")
    n = _same_dim(A, T)
    k = T.ndim
    # P[x, y, i_1..i_k] = sum_j A[y, i_j] T(.., e_x at slot j, ..); the e_y part is P with x, y swapped
    P = None
    for j in range(k):
        a = A.reshape((1, n) + tuple(n if i == j else 1 for i in range(k)))
        term = a * np.expand_dims(np.moveaxis(T, j, 0), (1, 2 + j))
        if P is None:
            P = term
        else:
            P += term
    return np.moveaxis(P.swapaxes(0, 1) - P, (0, 1), (-2, -1))


def endomorphism(B: np.ndarray, m: MetricAtPoint) -> np.ndarray:
    """Components ``E[x,y,z,e]`` of ``B(X,Y)Z = E[x,y,z,e] e_e``."""
    return np.einsum("xyzd,de->xyze", B, m.g_inv)


def curvature_action(B: np.ndarray, T: np.ndarray, m: MetricAtPoint) -> np.ndarray:
    """Derivation action ``B . T`` of a curvature-type tensor on a (0,k) tensor, k in {2, 4}."""
    if B.ndim != 4:
        raise ValueError("B must be a (0,4) tensor")
    if T.ndim not in (2, 4):
        raise ValueError(f"unsupported valence {T.ndim} for B . T (expected 2 or 4)")
    _same_dim(B, T, m.g)
    return -_slot_sum(T, endomorphism(B, m))


def ricci_of(T: np.ndarray, m: MetricAtPoint) -> np.ndarray:
    return np.einsum("ab,aijb->ij", m.g_inv, T)


def kappa_of(T: np.ndarray, m: MetricAtPoint) -> float:
    return trace_g(ricci_of(T, m), m)


def weyl_of(T: np.ndarray, m: MetricAtPoint) -> np.ndarray:
    """Weyl part of a generalized curvature tensor (n >= 4)."""
    n = m.dim
    if n < 4:
        raise ValueError("Weyl(T) needs n >= 4")
    ric = ricci_of(T, m)
    kap = trace_g(ric, m)
    gg = kn_product(m.g, m.g)
    return T - kn_product(m.g, ric) / (n - 2) + kap / (2 * (n - 2) * (n - 1)) * gg


def ricci_kappa_weyl_of(T: np.ndarray, m: MetricAtPoint):
    """``(Ric(T), kappa(T), Weyl(T))``; the Weyl part needs n >= 4."""
    ric = ricci_of(T, m)
    return ric, trace_g(ric, m), weyl_of(T, m)


def build_E_of(A: np.ndarray, m: MetricAtPoint) -> np.ndarray:
    """The (0,4) tensor ``E(A)`` built from Kulkarni-Nomizu products of g, A, A^2."""
    n = m.dim
    if n < 3:
        raise ValueError("E(A) needs n >= 3")
    g = m.g
    A2 = metric_power(A, 2, m)
    trA = trace_g(A, m)
    trA2 = trace_g(A2, m)
    return (
        kn_product(g, A2)
        + (n - 2) / 2 * kn_product(A, A)
        - trA * kn_product(g, A)
        + (trA**2 - trA2) / (2 * (n - 1)) * kn_product(g, g)
    )


def build_E(m: MetricAtPoint, S: np.ndarray) -> np.ndarray:
    """``E`` of a Ricci tensor; identical to :func:`build_E_of` with ``A = S``."""
    return build_E_of(S, m)


# symmetry-class predicates: each returns the largest violation found

def symmetric_defect(T: np.ndarray) -> float:
    return float(np.max(np.abs(T - T.T)))


def curvature_defect(T: np.ndarray) -> float:
    """Max violation of the generalized-curvature-tensor symmetries."""
    anti12 = T + T.transpose(1, 0, 2, 3)
    anti34 = T + T.transpose(0, 1, 3, 2)
    pair = T - T.transpose(2, 3, 0, 1)
    # T[a,b,c,d] + T[b,c,a,d] + T[c,a,b,d]
    bianchi = T + T.transpose(2, 0, 1, 3) + T.transpose(1, 2, 0, 3)
    return float(max(np.max(np.abs(x)) for x in (anti12, anti34, pair, bianchi)))


def derivation_defect(T: np.ndarray) -> float:
    """Antisymmetry violation in the last index pair."""
    return float(np.max(np.abs(T + np.swapaxes(T, -1, -2))))
