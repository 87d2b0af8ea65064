"""Second-order truncated Taylor arithmetic in several variables.

A :class:`Jet` carries a value, its gradient and its Hessian with respect to
the chart coordinates. Arithmetic propagates all three exactly (up to
rounding), which is the multivariate form of hyper-dual numbers: one
evaluation of a metric component yields every first and second partial.

The module-level functions (``sin``, ``exp``, ...) accept plain floats as
well, so metric component functions can be written once and evaluated on
either.
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np


class Jet:
    __slots__ = ("v", "d", "h")
    __array_priority__ = 1000

    def __init__(self, v: float, d: np.ndarray, h: np.ndarray):
        self.v = float(v)
        self.d = d
        self.h = h

    @classmethod
    def variables(cls, point) -> list["Jet"]:
        """Seed one jet per coordinate: value x_i, gradient e_i, zero Hessian."""
        point = np.asarray(point, dtype=float)
        n = point.size
        eye = np.eye(n)
        return [cls(point[i], eye[i].copy(), np.zeros((n, n))) for i in range(n)]

    def __repr__(self) -> str:
        return f"Jet({self.v!r}, d={self.d!r})"

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        if isinstance(other, Real):
            n = self.d.size
            return Jet(other, np.zeros(n), np.zeros((n, n)))
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, Real):
            return Jet(self.v + other, self.d, self.h)
        if not isinstance(other, Jet):
            return NotImplemented
        return Jet(self.v + other.v, self.d + other.d, self.h + other.h)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.v, -self.d, -self.h)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Real):
            return Jet(self.v - other, self.d, self.h)
        if not isinstance(other, Jet):
            return NotImplemented
        return Jet(self.v - other.v, self.d - other.d, self.h - other.h)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return Jet(self.v * other, self.d * other, self.h * other)
        if not isinstance(other, Jet):
            return NotImplemented
        cross = np.outer(self.d, other.d)
        return Jet(
            self.v * other.v,
            self.v * other.d + other.v * self.d,
            self.v * other.h + other.v * self.h + cross + cross.T,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        v = self.v
        return _chain(self, 1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def __truediv__(self, other):
        if isinstance(other, Real):
            return self * (1.0 / other)
        if not isinstance(other, Jet):
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, Jet):
            return exp(p * log(self))
        if not isinstance(p, Real):
            return NotImplemented
        if p == 0:
            return self._lift(1.0)
        if p == 1:
            return self
        v = self.v
        d2 = p * (p - 1) * v ** (p - 2) if p != 2 else 2.0
        return _chain(self, v**p, p * v ** (p - 1), d2)

    def __rpow__(self, base):
        if not isinstance(base, Real):
            return NotImplemented
        return exp(self * math.log(base))


def _chain(x: Jet, f0: float, f1: float, f2: float) -> Jet:
    return Jet(f0, f1 * x.d, f1 * x.h + f2 * np.outer(x.d, x.d))


def _unary(name, f, f1, f2):
    def fn(x):
        if isinstance(x, Jet):
            return _chain(x, f(x.v), f1(x.v), f2(x.v))
        return f(x)

    fn.__name__ = name
    fn.__doc__ = f"{name} on floats or jets"
    return fn


sin = _unary("sin", math.sin, math.cos, lambda v: -math.sin(v))
cos = _unary("cos", math.cos, lambda v: -math.sin(v), lambda v: -math.cos(v))
tan = _unary("tan", math.tan, lambda v: 1 / math.cos(v) ** 2, lambda v: 2 * math.tan(v) / math.cos(v) ** 2)
exp = _unary("exp", math.exp, math.exp, math.exp)
log = _unary("log", math.log, lambda v: 1 / v, lambda v: -1 / v**2)
sinh = _unary("sinh", math.sinh, math.cosh, math.sinh)
cosh = _unary("cosh", math.cosh, math.sinh, math.cosh)
sqrt = _unary("sqrt", math.sqrt, lambda v: 0.5 / math.sqrt(v), lambda v: -0.25 * v**-1.5)


def pow(x, p):  # noqa: A001 - mirrors the chart-file grammar
    return x**p


def value(x) -> float:
    return x.v if isinstance(x, Jet) else float(x)


def derivatives(x, n: int):
    """``(value, gradient, hessian)`` of a jet or constant in ``n`` variables."""
    if isinstance(x, Jet):
        return x.v, x.d, x.h
    return float(x), np.zeros(n), np.zeros((n, n))
