"""Metric charts, their derivatives and pointwise curvature evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import jet
from .jet import Jet
from .package import MEMBERSHIP_TOL, CurvaturePackage, package_from_curvature
from .tensors import metric_at

ANGLE_MARGIN = 0.1
RN_H_MIN = 0.01


class GuardError(ValueError):
    """A point lies outside the chart's guarded domain."""


class GuardRegionError(RuntimeError):
    """Sampling could not find points inside the guarded domain."""


@dataclass(frozen=True, eq=False)
class MetricChart:
    """A coordinate chart with metric component functions.

    ``metric_fn`` maps a sequence of coordinates (floats or :class:`Jet`) to an
    ``n x n`` nested list of components and must only use arithmetic and the
    functions in :mod:`curvlab.jet`. ``box`` bounds the sampling region and
    ``guard`` rejects singular coordinates inside it. ``fd_scale`` optionally
    gives a per-coordinate length scale at ``x`` for finite-difference steps.
    """

    name: str
    coords: tuple
    metric_fn: Callable
    box: tuple
    params: dict = field(default_factory=dict)
    guard: Callable | None = None
    tags: frozenset = frozenset()
    signature: int | None = None
    fd_scale: Callable | None = None

    @property
    def dim(self) -> int:
        return len(self.coords)

    def allows(self, x) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,) or not np.all(np.isfinite(x)):
            return False
        return self.guard is None or bool(self.guard(x))

    def metric(self, x) -> np.ndarray:
        rows = self.metric_fn([float(v) for v in x])
        return np.array([[jet.value(c) for c in row] for row in rows], dtype=float)


# -- derivatives ------------------------------------------------------------

def metric_derivatives(chart: MetricChart, x):
    """``(g, dg, d2g)`` with ``dg[k,i,j] = d_k g_ij`` and ``d2g[k,l,i,j] = d_k d_l g_ij``."""
    n = chart.dim
    rows = chart.metric_fn(Jet.variables(x))
    g = np.zeros((n, n))
    dg = np.zeros((n, n, n))
    d2g = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            v, d, h = jet.derivatives(rows[i][j], n)
            g[i, j] = v
            dg[:, i, j] = d
            d2g[:, :, i, j] = h
    return g, dg, d2g


def metric_derivatives_fd(chart: MetricChart, x, step: float = 1e-4, richardson: bool = False):
    """Central finite-difference estimate of :func:`metric_derivatives` (cross-check only).

    The step along coordinate ``k`` is ``step`` times the chart's length scale
    there (1 unless the chart declares ``fd_scale``). ``richardson`` combines
    steps ``h`` and ``h/2`` to cancel the ``h^2`` error term.
    """
    if richardson:
        g, d1, h1 = metric_derivatives_fd(chart, x, step)
        _, d2, h2 = metric_derivatives_fd(chart, x, step / 2)
        return g, (4 * d2 - d1) / 3, (4 * h2 - h1) / 3
    x = np.asarray(x, dtype=float)
    n = chart.dim
    f = chart.metric
    g = f(x)
    dg = np.zeros((n, n, n))
    d2g = np.zeros((n, n, n, n))
    h = step * (np.ones(n) if chart.fd_scale is None else np.asarray(chart.fd_scale(x), dtype=float))
    eye = np.diag(h)
    for k in range(n):
        dg[k] = (f(x + eye[k]) - f(x - eye[k])) / (2 * h[k])
        d2g[k, k] = (f(x + eye[k]) - 2 * g + f(x - eye[k])) / h[k] ** 2
        for l in range(k + 1, n):
            d2g[k, l] = (
                f(x + eye[k] + eye[l]) - f(x + eye[k] - eye[l])
                - f(x - eye[k] + eye[l]) + f(x - eye[k] - eye[l])
            ) / (4 * h[k] * h[l])
            d2g[l, k] = d2g[k, l]
    return g, dg, d2g


def christoffel(g_inv, dg):
    """``Gamma[k,i,j]`` (symmetric in i, j) and the lowered symbols ``Gamma_low[l,i,j]``."""
    low = 0.5 * (dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg)
    # low[l,i,j] = 1/2 (d_i g_lj + d_j g_li - d_l g_ij)
    return np.einsum("kl,lij->kij", g_inv, low), low


def riemann_from_derivatives(g, g_inv, dg, d2g):
    """Covariant curvature tensor ``R[a,b,c,d] = g(R(e_a, e_b) e_c, e_d)`` and ``Gamma``."""
    gam, low = christoffel(g_inv, dg)
    # d_m Gamma_low[l,i,j]
    dlow = 0.5 * (d2g.transpose(0, 2, 1, 3) + d2g.transpose(0, 2, 3, 1) - d2g)
    dginv = -np.einsum("ka,mab,bl->mkl", g_inv, dg, g_inv)
    dgam = np.einsum("mkl,lij->mkij", dginv, low) + np.einsum("kl,mlij->mkij", g_inv, dlow)
    # R^r_{s m v} = d_m Gam^r_{v s} - d_v Gam^r_{m s} + Gam^r_{m l} Gam^l_{v s} - Gam^r_{v l} Gam^l_{m s}
    quad = np.einsum("rml,lvs->rsmv", gam, gam)
    rud = dgam.transpose(1, 3, 0, 2) - dgam.transpose(1, 3, 2, 0) + quad - quad.transpose(0, 1, 3, 2)
    R = np.einsum("de,ecab->abcd", g, rud)
    return R, gam


def evaluate_package(chart: MetricChart, point, tol: float = MEMBERSHIP_TOL, fd_step: float | None = None) -> CurvaturePackage:
    """Curvature package at ``point``; ``fd_step`` switches to finite differences (oracle use)."""
    if not chart.allows(point):
        raise GuardError(f"point {tuple(point)} violates the domain guard of chart {chart.name!r}")
    if fd_step is None:
        g, dg, d2g = metric_derivatives(chart, point)
    else:
        g, dg, d2g = metric_derivatives_fd(chart, point, fd_step)
    m = metric_at(g)
    if chart.signature is not None and m.signature != chart.signature:
        raise ValueError(
            f"chart {chart.name!r} declares {chart.signature} negative directions, metric has {m.signature}"
        )
    R, gam = riemann_from_derivatives(m.g, m.g_inv, dg, d2g)
    return package_from_curvature(m, R, point=point, gamma=gam, tol=tol)


# -- sampling ---------------------------------------------------------------

def sample_points(chart: MetricChart, count: int, seed: int = 0, max_tries: int = 1000) -> list:
    """Deterministic pseudo-random points inside ``chart.box`` that pass the guard."""
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    lo = np.array([b[0] for b in chart.box], dtype=float)
    hi = np.array([b[1] for b in chart.box], dtype=float)
    out = []
    for _ in range(max_tries * count):
        x = lo + (hi - lo) * rng.random(chart.dim)
        if chart.allows(x):
            out.append(tuple(float(v) for v in x))
            if len(out) == count:
                return out
    raise GuardRegionError(f"could not sample {count} points inside the guard region of {chart.name!r}")


# -- builtin charts ---------------------------------------------------------

def _sphere_diag(angles: Sequence, r2) -> list:
    """Diagonal of the round metric of radius ``sqrt(r2)`` in hyperspherical angles."""
    out = []
    w = r2
    for k, th in enumerate(angles):
        out.append(w)
        if k < len(angles) - 1:
            w = w * jet.sin(th) ** 2
    return out


def _sphere_box(k: int) -> list:
    if k == 1:
        return [(0.0, 2 * math.pi)]
    return [(ANGLE_MARGIN, math.pi - ANGLE_MARGIN)] * (k - 1) + [(0.0, 2 * math.pi)]


def _diag(entries) -> list:
    n = len(entries)
    return [[entries[i] if i == j else 0.0 for j in range(n)] for i in range(n)]


def _positive(name, value):
    if not value > 0:
        raise ValueError(f"parameter {name} must be positive, got {value}")
    return float(value)


def _dim(n, minimum=3):
    if int(n) != n or n < minimum:
        raise ValueError(f"dimension must be an integer >= {minimum}, got {n}")
    return int(n)


def constant_curvature(n: int = 4, kappa: float = 12.0) -> MetricChart:
    """Space form with scalar curvature ``kappa`` in geodesic polar coordinates."""
    n = _dim(n)
    K = kappa / (n * (n - 1))
    if K > 0:
        s = math.sqrt(K)
        f = lambda rho: jet.sin(s * rho) / s  # noqa: E731
        rbox = (ANGLE_MARGIN / s, (math.pi - ANGLE_MARGIN) / s)
    elif K < 0:
        s = math.sqrt(-K)
        f = lambda rho: jet.sinh(s * rho) / s  # noqa: E731
        rbox = (ANGLE_MARGIN / s, 2.0 / s)
    else:
        f = lambda rho: rho  # noqa: E731
        rbox = (0.5, 2.0)

    def metric_fn(x):
        return _diag([1.0] + _sphere_diag(x[1:], f(x[0]) ** 2))

    return MetricChart(
        name="constant-curvature",
        coords=("rho",) + tuple(f"th{i}" for i in range(1, n)),
        metric_fn=metric_fn,
        box=tuple([rbox] + _sphere_box(n - 1)),
        params={"n": n, "kappa": float(kappa)},
        tags=frozenset({"constant-curvature", "conformally-flat", "einstein"}),
    )


def sphere_product(p: int = 2, r1: float = 1.0, r2: float = 2.0, n: int | None = None, q: int | None = None) -> MetricChart:
    """Riemannian product ``S^p(r1) x S^q(r2)``, ``n = p + q``."""
    if q is None:
        q = (4 if n is None else int(n)) - int(p)
    p, q = int(p), int(q)
    if p < 1 or q < 1:
        raise ValueError("sphere-product needs p >= 1 and q >= 1")
    _dim(p + q)
    r1, r2 = _positive("r1", r1), _positive("r2", r2)
    n = p + q

    def metric_fn(x):
        return _diag(_sphere_diag(x[:p], r1**2) + _sphere_diag(x[p:], r2**2))

    tags = set()
    if p == 1 or q == 1:
        tags.add("conformally-flat")
    elif (n - p - 1) * r1**2 != (p - 1) * r2**2:
        tags.add("roter")
    else:
        tags.add("einstein")
    return MetricChart(
        name="sphere-product",
        coords=tuple(f"u{i}" for i in range(1, p + 1)) + tuple(f"v{i}" for i in range(1, q + 1)),
        metric_fn=metric_fn,
        box=tuple(_sphere_box(p) + _sphere_box(q)),
        params={"p": p, "q": q, "r1": r1, "r2": r2, "n": n},
        tags=frozenset(tags),
    )


WARP_1D = {
    "exp": lambda t, a, b: jet.exp(2 * a * t),
    "quadratic": lambda t, a, b: 1 + a * t**2 + b * t,
    "cosh": lambda t, a, b: jet.cosh(a * t) ** 2,
}

WARP_2D = {
    "exp": lambda u, v, a, b: jet.exp(2 * (a * u + b * v)),
    "quadratic": lambda u, v, a, b: 1 + a * u**2 + b * v,
    "const": lambda u, v, a, b: 1.0 + 0.0 * u,
}


def _warp(table, F, *, a, b):
    if callable(F):
        return F
    if F not in table:
        raise ValueError(f"unknown warping family {F!r}; choose from {sorted(table)} or pass a callable")
    fam = table[F]
    return lambda *xs: fam(*xs, a, b)


def warped_1xN(n: int = 4, F="exp", a: float = 0.3, b: float = 0.0, r2: float = 1.0, base: str = "riemannian") -> MetricChart:
    """``eps dt^2 + F(t) g_fibre`` with a round ``S^{n-1}(r2)`` fibre (an Einstein fibre)."""
    n = _dim(n)
    r2 = _positive("r2", r2)
    sign = {"riemannian": 1.0, "lorentzian": -1.0}.get(base)
    if sign is None:
        raise ValueError("base must be 'riemannian' or 'lorentzian'")
    warp = _warp(WARP_1D, F, a=a, b=b)

    def metric_fn(x):
        return _diag([sign] + _sphere_diag(x[1:], warp(x[0]) * r2**2))

    return MetricChart(
        name="warped-1xN",
        coords=("t",) + tuple(f"th{i}" for i in range(1, n)),
        metric_fn=metric_fn,
        box=tuple([(-1.0, 1.0)] + _sphere_box(n - 1)),
        params={"n": n, "F": F if isinstance(F, str) else "custom", "a": a, "b": b, "r2": r2, "base": base},
        guard=lambda x: jet.value(warp(x[0])) > 1e-3,
        tags=frozenset({"warped-1xN"}),
    )


def warped_2xN(n: int = 4, F="exp", a: float = 0.3, b: float = 0.2, r1: float = 1.0, r2: float = 1.0, base: str = "sphere") -> MetricChart:
    """``g_base + F(u, v) g_fibre`` with a 2-dimensional base and a round ``S^{n-2}(r2)`` fibre."""
    n = _dim(n, 4)
    r1, r2 = _positive("r1", r1), _positive("r2", r2)
    warp = _warp(WARP_2D, F, a=a, b=b)
    if base == "sphere":
        base_fn = lambda u, v: [r1**2, r1**2 * jet.sin(u) ** 2]  # noqa: E731
        bbox = [(ANGLE_MARGIN, math.pi - ANGLE_MARGIN), (0.0, 2 * math.pi)]
    elif base == "flat":
        base_fn = lambda u, v: [1.0, 1.0]  # noqa: E731
        bbox = [(-1.0, 1.0), (-1.0, 1.0)]
    elif base == "lorentzian":
        base_fn = lambda u, v: [-1.0, 1.0]  # noqa: E731
        bbox = [(-1.0, 1.0), (-1.0, 1.0)]
    else:
        raise ValueError("base must be 'sphere', 'flat' or 'lorentzian'")

    def metric_fn(x):
        u, v = x[0], x[1]
        return _diag(base_fn(u, v) + _sphere_diag(x[2:], warp(u, v) * r2**2))

    return MetricChart(
        name="warped-2xN",
        coords=("u", "v") + tuple(f"th{i}" for i in range(1, n - 1)),
        metric_fn=metric_fn,
        box=tuple(bbox + _sphere_box(n - 2)),
        params={"n": n, "F": F if isinstance(F, str) else "custom", "a": a, "b": b, "r1": r1, "r2": r2, "base": base},
        guard=lambda x: jet.value(warp(x[0], x[1])) > 1e-3,
        tags=frozenset({"warped-2xN"} | ({"sphere-base"} if base == "sphere" else set())),
    )


def rn_h(r, M, Q, Lambda, exponent=2):
    return 1 - 2 * M / r + Q**2 / r**2 - Lambda / 3 * r**exponent


def rn_length_scale(r, M, Q, Lambda, exponent=2):
    """``min(r, |h/h'|)``: the radial distance over which ``h`` or ``1/h`` changes appreciably."""
    dh = 2 * M / r**2 - 2 * Q**2 / r**3 - Lambda * exponent / 3 * r ** (exponent - 1)
    h = rn_h(r, M, Q, Lambda, exponent)
    return min(abs(r), abs(h / dh)) if dh != 0 else abs(r)


def rn_band(M, Q, Lambda, exponent=2, r_min=1e-2, r_max=50.0, h_min=RN_H_MIN, samples=20000):
    """Widest (in log r) interval of ``[r_min, r_max]`` on which ``h(r) > h_min``.

    The edges are pulled one grid step inwards so every grid point of the
    returned band clears ``h_min``.
    """
    r = np.geomspace(r_min, r_max, samples)
    ok = rn_h(r, M, Q, Lambda, exponent) > h_min
    best, start = None, None
    for i, flag in enumerate(np.append(ok, False)):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            stop = i - 1
            if stop - start >= 2 and (best is None or stop - start > best[1] - best[0]):
                best = (start, stop)
            start = None
    if best is None:
        raise GuardRegionError(f"h(r) > {h_min} nowhere on [{r_min}, {r_max}]")
    return float(r[best[0] + 1]), float(r[best[1] - 1])


def rn_desitter(M: float = 1.0, Q: float = 0.5, Lambda: float = 0.3, exponent: int = 2, band=None) -> MetricChart:
    """Reissner-Nordstrom-(anti-)de Sitter line element in Schwarzschild coordinates.

    The cosmological term is ``-(Lambda/3) r**exponent``; ``exponent=2`` is the
    standard solution and ``exponent=3`` gives a non-standard variant.
    """
    if Q == 0:
        raise ValueError("Q must be non-zero (the Roter coefficients divide by Q)")
    M, Q, Lambda = float(M), float(Q), float(Lambda)
    if band is None:
        band = rn_band(M, Q, Lambda, exponent)

    def metric_fn(x):
        r, th = x[1], x[2]
        h = 1 - 2 * M / r + Q**2 / r**2 - Lambda / 3 * r**exponent
        return _diag([-h, 1 / h, r**2, r**2 * jet.sin(th) ** 2])

    return MetricChart(
        name="rn-desitter",
        coords=("t", "r", "theta", "phi"),
        metric_fn=metric_fn,
        box=((0.0, 1.0), tuple(band), (ANGLE_MARGIN, math.pi - ANGLE_MARGIN), (0.0, 2 * math.pi)),
        params={"M": M, "Q": Q, "Lambda": Lambda, "exponent": exponent, "band": tuple(band)},
        guard=lambda x: x[1] > 0 and rn_h(x[1], M, Q, Lambda, exponent) > RN_H_MIN,
        tags=frozenset({"warped-2xN", "roter"}),
        fd_scale=lambda x: (1.0, rn_length_scale(x[1], M, Q, Lambda, exponent), 1.0, 1.0),
    )


BUILTINS = {
    "constant-curvature": constant_curvature,
    "sphere-product": sphere_product,
    "warped-1xN": warped_1xN,
    "warped-2xN": warped_2xN,
    "rn-desitter": rn_desitter,
}


def builtin_chart(name: str, **params) -> MetricChart:
    """Construct a builtin chart by name; ``custom`` loads a chart file from ``path``."""
    if name == "flat":
        return constant_curvature(n=params.get("n", 4), kappa=0.0)
    if name == "custom":
        from .chartfile import load_chart

        return load_chart(params["path"])
    if name not in BUILTINS:
        raise ValueError(f"unknown chart {name!r}; choose from {sorted(BUILTINS) + ['flat', 'custom']}")
    return BUILTINS[name](**params)
