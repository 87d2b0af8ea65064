"""Linear-dependence fits between tensors and the shared residual metric."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tensors import MetricAtPoint

ZERO_TOL = 1e-10
RANK_RTOL = 1e-8


def sup(T) -> float:
    return float(np.max(np.abs(T))) if np.size(T) else 0.0


def residual(lhs, rhs) -> float:
    """Scale-invariant residual ``|lhs - rhs|_inf / (1 + max(|lhs|_inf, |rhs|_inf))``."""
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    return sup(lhs - rhs) / (1.0 + max(sup(lhs), sup(rhs)))


def is_zero(T, atol: float = ZERO_TOL) -> bool:
    return sup(T) <= atol


@dataclass(frozen=True)
class FitResult:
    """Least-squares coefficients of a tensor against a basis.

    ``degenerate`` is set when the basis vanishes (within ``ZERO_TOL``); then
    ``vacuous`` tells whether the target vanishes as well, in which case the
    linear-dependence condition holds trivially.
    """

    coeffs: np.ndarray
    residual: float
    cond: float = 1.0
    rank: int = 1
    degenerate: bool = False
    vacuous: bool = False
    rank_deficient: bool = False

    @property
    def value(self) -> float:
        """First coefficient; the proportionality factor for one-element fits."""
        return float(self.coeffs[0])

    def holds(self, tol: float) -> bool:
        """True when the fitted relation is satisfied to ``tol`` (or vacuously)."""
        return self.vacuous or (not self.degenerate and self.residual < tol)


def proportionality_fit(T1, T2, zero_tol: float = ZERO_TOL) -> FitResult:
    """Fit ``T1 ~ lam * T2`` over flattened components."""
    T1 = np.asarray(T1, dtype=float)
    T2 = np.asarray(T2, dtype=float)
    if T1.shape != T2.shape:
        raise ValueError(f"shape mismatch: {T1.shape} vs {T2.shape}")
    scale = 1.0 + max(sup(T1), sup(T2))
    if is_zero(T2, zero_tol):
        return FitResult(
            coeffs=np.zeros(1),
            residual=sup(T1) / scale,
            cond=np.inf,
            rank=0,
            degenerate=True,
            vacuous=is_zero(T1, zero_tol),
        )
    x, y = T2.ravel(), T1.ravel()
    lam = float(np.dot(x, y) / np.dot(x, x))
    return FitResult(coeffs=np.array([lam]), residual=sup(T1 - lam * T2) / scale)


def linear_combination_fit(T, basis, rcond: float = 1e-10, zero_tol: float = ZERO_TOL) -> FitResult:
    """Least-squares ``T ~ sum_i c_i basis[i]``.

    Columns are normalised before an SVD solve so the reported condition
    number reflects the geometry of the basis rather than its scaling. A
    rank-deficient basis is flagged and the minimal-norm solution (in the
    normalised coordinates) is returned.
    """
    T = np.asarray(T, dtype=float)
    basis = [np.asarray(b, dtype=float) for b in basis]
    if not basis:
        raise ValueError("empty basis")
    if len(basis) > 8:
        raise ValueError("basis size is limited to 8")
    if any(b.shape != T.shape for b in basis):
        raise ValueError("basis tensors must match the target shape")
    M = np.stack([b.ravel() for b in basis], axis=1)
    norms = np.linalg.norm(M, axis=0)
    live = norms > zero_tol
    k = len(basis)
    if not live.any():
        return FitResult(
            coeffs=np.zeros(k), residual=sup(T) / (1.0 + sup(T)), cond=np.inf, rank=0,
            degenerate=True, vacuous=is_zero(T, zero_tol), rank_deficient=True,
        )
    Ms = M[:, live] / norms[live]
    sol, _, rank, sv = np.linalg.lstsq(Ms, T.ravel(), rcond=rcond)
    coeffs = np.zeros(k)
    coeffs[live] = sol / norms[live]
    fit = M @ coeffs
    # effective conditioning over the retained singular values
    cond = float(sv[0] / sv[rank - 1]) if rank > 0 else np.inf
    return FitResult(
        coeffs=coeffs,
        residual=sup(T.ravel() - fit) / (1.0 + max(sup(T), sup(fit))),
        cond=cond,
        rank=int(rank),
        rank_deficient=int(rank) < k,
    )


@dataclass(frozen=True)
class RankShift:
    """Candidate shifts ``alpha`` with ``rank(A - alpha g)``, best first."""

    candidates: list = field(default_factory=list)
    complex_spectrum: bool = False

    @property
    def best(self):
        return self.candidates[0] if self.candidates else (float("nan"), -1)

    @property
    def min_rank(self) -> int:
        return self.best[1]


def numerical_rank(A, rtol: float = RANK_RTOL, floor: float = 0.0) -> int:
    """Count singular values above ``max(rtol * sigma_max, floor)``."""
    sv = np.linalg.svd(np.asarray(A, dtype=float), compute_uv=False)
    return int(np.sum(sv > max(rtol * sv[0], floor)))


def rank_shift(A, m: MetricAtPoint, rtol: float = RANK_RTOL, cluster_tol: float = 1e-9) -> RankShift:
    """Ranks of ``A - alpha g`` for every real eigenvalue alpha of ``g^{-1} A``.

    Minimal rank wins; ties go to the smaller ``|alpha|``. Eigenvalues closer
    than ``cluster_tol`` (relative) are merged to their mean so a repeated
    eigenvalue is tested once.
    """
    A = np.asarray(A, dtype=float)
    if m.dim < 3:
        raise ValueError("rank_shift needs n >= 3")
    ev = np.linalg.eigvals(m.g_inv @ A)
    scale = max(1.0, float(np.max(np.abs(ev))))
    is_real = np.abs(ev.imag) <= 1e-9 * scale
    reals = np.sort(ev.real[is_real])
    clusters: list[list[float]] = []
    for x in reals:
        if clusters and abs(x - clusters[-1][-1]) <= cluster_tol * scale:
            clusters[-1].append(x)
        else:
            clusters.append([x])
    cands = []
    for c in clusters:
        alpha = float(np.mean(c))
        # rounding floor: an exact shift A = alpha*g must come out as rank 0
        floor = 1e-12 * (sup(A) + abs(alpha) * sup(m.g))
        cands.append((alpha, numerical_rank(A - alpha * m.g, rtol, floor)))
    cands.sort(key=lambda t: (t[1], abs(t[0])))
    return RankShift(candidates=cands, complex_spectrum=bool(not is_real.all()))
