"""Truncated Taylor jets of holomorphic functions.

A jet of order ``K`` at ``z0`` stores the scaled coefficients

    c_k = f^(k)(z0) / k!,   k = 0..K

so that ``f(z0 + h) = c_0 + c_1 h + ... + c_K h^K + O(h^(K+1))``. Scaled
coefficients keep magnitudes tame at high order; :meth:`ComplexJet.derivatives`
multiplies back by ``k!``.

Centers may be scalars or numpy arrays. With an array center of shape ``S`` the
coefficient array has shape ``(K+1, *S)`` and every operation acts pointwise,
which is how whole disk grids are evaluated in one pass.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

POLE_TOL = 1e-300
CENTER_TOL = 1e-12


class JetError(ValueError):
    """Base class for jet evaluation failures."""


class PoleError(JetError):
    """Division by a jet whose constant term vanishes."""


class BranchCutError(JetError):
    """Principal log or power evaluated on the non-positive real axis."""


@dataclass(frozen=True, eq=False)
class ComplexJet:
    center: complex | np.ndarray
    coeffs: np.ndarray

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self):
        return self.coeffs[0]

    def derivative(self, k: int):
        return self.coeffs[k] * factorial(k)

    def derivatives(self) -> np.ndarray:
        scale = np.array([factorial(k) for k in range(self.order + 1)], dtype=float)
        return self.coeffs * scale.reshape((-1,) + (1,) * (self.coeffs.ndim - 1))

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, c, center, order: int) -> "ComplexJet":
        center = np.asarray(center, dtype=complex)
        coeffs = np.zeros((order + 1,) + center.shape, dtype=complex)
        coeffs[0] = c
        return cls(center, coeffs)

    @classmethod
    def identity(cls, center, order: int) -> "ComplexJet":
        center = np.asarray(center, dtype=complex)
        coeffs = np.zeros((order + 1,) + center.shape, dtype=complex)
        coeffs[0] = center
        if order >= 1:
            coeffs[1] = 1.0
        return cls(center, coeffs)

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other) -> "ComplexJet":
        if isinstance(other, ComplexJet):
            return other
        return ComplexJet.constant(other, self.center, self.order)

    def _aligned(self, other: "ComplexJet"):
        k = min(self.order, other.order)
        return self.coeffs[: k + 1], other.coeffs[: k + 1]

    def __add__(self, other):
        if not isinstance(other, ComplexJet):
            out = self.coeffs.copy()
            out[0] = out[0] + other
            return ComplexJet(self.center, out)
        a, b = self._aligned(other)
        return ComplexJet(self.center, a + b)

    __radd__ = __add__

    def __neg__(self):
        return ComplexJet(self.center, -self.coeffs)

    def __sub__(self, other):
        return self + (-other if isinstance(other, ComplexJet) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ComplexJet):
            return ComplexJet(self.center, self.coeffs * other)
        a, b = self._aligned(other)
        return ComplexJet(self.center, _convolve(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ComplexJet):
            return ComplexJet(self.center, self.coeffs / other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, s):
        if float(s).is_integer():
            return self.ipow(int(s))
        return self.rpow(float(s))

    def reciprocal(self) -> "ComplexJet":
        u = self.coeffs
        u0 = u[0]
        if np.any(np.abs(u0) < POLE_TOL):
            raise PoleError("reciprocal of a jet with vanishing constant term")
        r = np.zeros_like(u)
        r[0] = 1.0 / u0
        for k in range(1, u.shape[0]):
            acc = np.zeros_like(u0)
            for i in range(1, k + 1):
                acc = acc + u[i] * r[k - i]
            r[k] = -acc / u0
        return ComplexJet(self.center, r)

    def ipow(self, n: int) -> "ComplexJet":
        if n < 0:
            return self.ipow(-n).reciprocal()
        result = ComplexJet.constant(1.0, self.center, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def rpow(self, s: float) -> "ComplexJet":
        """Principal branch of ``self**s`` for real ``s``."""
        u = self.coeffs
        u0 = u[0]
        _check_cut(u0)
        p = np.zeros_like(u)
        p[0] = np.exp(s * np.log(u0))
        for k in range(1, u.shape[0]):
            acc = np.zeros_like(u0)
            for i in range(1, k + 1):
                acc = acc + ((s + 1.0) * i - k) * u[i] * p[k - i]
            p[k] = acc / (k * u0)
        return ComplexJet(self.center, p)

    def log(self) -> "ComplexJet":
        u = self.coeffs
        u0 = u[0]
        _check_cut(u0)
        out = np.zeros_like(u)
        out[0] = np.log(u0)
        for k in range(1, u.shape[0]):
            acc = np.zeros_like(u0)
            for i in range(1, k):
                acc = acc + i * out[i] * u[k - i]
            out[k] = (u[k] - acc / k) / u0
        return ComplexJet(self.center, out)

    def truncate(self, order: int) -> "ComplexJet":
        return ComplexJet(self.center, self.coeffs[: order + 1])


def _convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for k in range(out.shape[0]):
        for i in range(k + 1):
            out[k] = out[k] + a[i] * b[k - i]
    return out


def _check_cut(u0) -> None:
    u0 = np.asarray(u0)
    bad = (u0.imag == 0) & (u0.real <= 0)
    if np.any(bad):
        raise BranchCutError("argument on the non-positive real axis")


def jet_compose(outer: ComplexJet, inner: ComplexJet) -> ComplexJet:
    """Jet of ``f o phi`` at ``inner.center`` from the jet of ``f`` at ``phi(center)``.

    Horner evaluation of ``sum_k a_k (phi - phi(z0))^k`` in truncated arithmetic.
    """
    if outer.order != inner.order:
        raise ValueError(f"order mismatch: {outer.order} != {inner.order}")
    w0 = inner.coeffs[0]
    if np.any(np.abs(np.asarray(outer.center) - w0) > CENTER_TOL * np.maximum(1.0, np.abs(w0))):
        raise ValueError("outer jet center does not match inner constant term")
    shift = inner.coeffs.copy()
    shift[0] = 0.0
    K = inner.order
    acc = np.zeros(np.broadcast_shapes(outer.coeffs.shape, shift.shape), dtype=complex)
    acc[0] = outer.coeffs[K]
    for k in range(K - 1, -1, -1):
        acc = _convolve(acc, shift)
        acc[0] = acc[0] + outer.coeffs[k]
    return ComplexJet(inner.center, acc)
