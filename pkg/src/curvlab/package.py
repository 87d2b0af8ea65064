"""All curvature quantities at one point, built from a metric and a curvature tensor."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import tensors as tc
from .fitting import sup
from .tensors import MetricAtPoint

MEMBERSHIP_TOL = 1e-7


@dataclass(frozen=True)
class CurvaturePackage:
    """Curvature data at a point.

    ``R`` follows ``R(X1,X2,X3,X4) = g(R(X1,X2)X3, X4)`` with
    ``R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]`` so a round sphere of radius
    ``r`` has ``R = G / r**2``.

    Derived (0,6) tensors are built lazily by :meth:`dot` and :meth:`q` and
    memoised per package.
    """

    m: MetricAtPoint
    R: np.ndarray
    S: np.ndarray
    S2: np.ndarray
    kappa: float
    C: np.ndarray
    G: np.ndarray
    E: np.ndarray
    point: tuple | None = None
    gamma: np.ndarray | None = None
    tol: float = MEMBERSHIP_TOL
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.m.dim

    @property
    def g(self) -> np.ndarray:
        return self.m.g

    @cached_property
    def S3(self) -> np.ndarray:
        return tc.metric_power(self.S, 3, self.m)

    @cached_property
    def trS2(self) -> float:
        return tc.trace_g(self.S2, self.m)

    # membership flags for the open sets U_S, U_C, U_R
    @cached_property
    def einstein_defect(self) -> float:
        return sup(self.S - self.kappa / self.n * self.g) / (1.0 + sup(self.S))

    @cached_property
    def weyl_defect(self) -> float:
        return sup(self.C) / (1.0 + sup(self.R))

    @cached_property
    def constant_curvature_defect(self) -> float:
        n = self.n
        return sup(self.R - self.kappa / ((n - 1) * n) * self.G) / (1.0 + sup(self.R))

    @property
    def in_US(self) -> bool:
        return self.einstein_defect > self.tol

    @property
    def in_UC(self) -> bool:
        return self.n >= 4 and self.weyl_defect > self.tol

    @property
    def in_UR(self) -> bool:
        return self.constant_curvature_defect > self.tol

    def tensor(self, name: str) -> np.ndarray:
        """Look up a named tensor: ``g R S S2 S3 C G E``."""
        if name == "g":
            return self.g
        if name in ("R", "S", "S2", "S3", "C", "G", "E"):
            return getattr(self, name)
        raise KeyError(name)

    def dot(self, B: str, T: str) -> np.ndarray:
        """``B . T`` for named tensors, e.g. ``pkg.dot("R", "C")``."""
        key = ("dot", B, T)
        if key not in self._cache:
            self._cache[key] = tc.curvature_action(self.tensor(B), self.tensor(T), self.m)
        return self._cache[key]

    def q(self, A: str, T: str) -> np.ndarray:
        """``Q(A, T)`` for named tensors, e.g. ``pkg.q("g", "R")``."""
        key = ("q", A, T)
        if key not in self._cache:
            self._cache[key] = tc.tachibana(self.tensor(A), self.tensor(T))
        return self._cache[key]

    def wedge(self, A: str, B: str) -> np.ndarray:
        key = ("kn", A, B)
        if key not in self._cache:
            self._cache[key] = tc.kn_product(self.tensor(A), self.tensor(B))
        return self._cache[key]


def package_from_curvature(
    m: MetricAtPoint,
    R: np.ndarray,
    point=None,
    gamma=None,
    tol: float = MEMBERSHIP_TOL,
) -> CurvaturePackage:
    """Complete a package from the metric and the (0,4) curvature tensor."""
    S = tc.ricci_of(R, m)
    return package_from_parts(m, R, 0.5 * (S + S.T), point=point, gamma=gamma, tol=tol)


def package_from_parts(m: MetricAtPoint, R, S, kappa=None, point=None, gamma=None, tol: float = MEMBERSHIP_TOL) -> CurvaturePackage:
    """Package from a curvature tensor and a separately supplied Ricci tensor (and scalar curvature)."""
    n = m.dim
    if n < 3:
        raise ValueError("curvature packages need n >= 3")
    if kappa is None:
        kappa = tc.trace_g(S, m)
    G = 0.5 * tc.kn_product(m.g, m.g)
    C = R - tc.kn_product(m.g, S) / (n - 2) + kappa / ((n - 2) * (n - 1)) * G
    return CurvaturePackage(
        m=m,
        R=R,
        S=S,
        S2=tc.metric_power(S, 2, m),
        kappa=kappa,
        C=C,
        G=G,
        E=tc.build_E(m, S),
        point=None if point is None else tuple(float(x) for x in point),
        gamma=gamma,
        tol=tol,
    )
