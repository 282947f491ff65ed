"""Weights controlling derivatives of functions in the Lipschitz scale.

For ``beta`` with critical index ``N`` (smallest non-negative integer
``N >= beta``) the size of ``f^(j)`` for ``f`` in the unit ball of the
``beta`` space is governed by

* ``1``                      for ``j < N``,
* ``log(e / (1 - t))``       for ``j == N == beta``,
* ``(1 - t)**(beta - j)``    otherwise (``j >= N``, exponent negative).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .disksup import DiskGrid, SupEstimate, sup_weighted
from .expr import HoloExpr, evaluate
from .optimize import golden_section_max

INT_TOL = 1e-12
SCAN_POINTS = 10_000


def _snap(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < INT_TOL else x


def derivative_order(alpha: float) -> int:
    """Smallest non-negative integer strictly greater than ``alpha``."""
    return max(0, math.floor(_snap(alpha)) + 1)


def critical_index(beta: float) -> int:
    """Smallest non-negative integer ``N >= beta``."""
    return max(0, math.ceil(_snap(beta)))


def is_integer(x: float) -> bool:
    return abs(x - round(x)) < INT_TOL


@dataclass(frozen=True)
class SpaceParam:
    alpha: float
    beta: float
    J: int = field(init=False)
    N: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "J", derivative_order(self.alpha))
        object.__setattr__(self, "N", critical_index(self.beta))

    @property
    def compact_by_index(self) -> bool:
        return self.N > self.J

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "J": self.J, "N": self.N}


class Branch(enum.Enum):
    UNIT = "unit"
    POWER_GAP = "power"
    LOG = "log"


@dataclass(frozen=True)
class WeightSpec:
    branch: Branch
    exponent: float | None = None  # beta - j for POWER_GAP

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if np.any((t < 0.0) | (t >= 1.0)):
            raise ValueError("weight argument must lie in [0, 1)")
        if self.branch is Branch.UNIT:
            return np.ones_like(t)
        if self.branch is Branch.LOG:
            return 1.0 - np.log1p(-t)
        return (1.0 - t) ** self.exponent

    @property
    def gap(self) -> float:
        """``j - beta`` for the power branch."""
        return -self.exponent

    def describe(self) -> str:
        if self.branch is Branch.UNIT:
            return "1"
        if self.branch is Branch.LOG:
            return "log(e/(1-t))"
        return f"(1-t)^{self.exponent:g}"


def weight_spec(j: int, beta: float) -> WeightSpec:
    if j < 0:
        raise ValueError("j must be non-negative")
    N = critical_index(beta)
    if j <= N - 1:
        return WeightSpec(Branch.UNIT)
    if j == N and is_integer(beta) and round(beta) == N:
        return WeightSpec(Branch.LOG)
    return WeightSpec(Branch.POWER_GAP, _snap(beta) - j)


def omega(j: int, beta: float, t):
    """Weight value ``Omega_{j,beta}(t)``; scalar in, float out."""
    out = weight_spec(j, beta)(t)
    return float(out) if np.ndim(out) == 0 else out


# -- norms of monomials in weighted sup-spaces --------------------------------


@lru_cache(maxsize=None)
def monomial_norm(n: int, w: WeightSpec) -> float:
    """``sup_{0<=t<1} t**n / w(t)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0 or w.branch is Branch.UNIT:
        return 1.0
    if w.branch is Branch.POWER_GAP:
        g = w.gap
        return math.exp(n * math.log(n) + g * math.log(g) - (n + g) * math.log(n + g))
    return _log_monomial_norm(n)


def _log_objective(n: int):
    # t = 1 - exp(-u); log of t**n / log(e/(1-t)) = n log(1-e^-u) - log(1+u)
    def obj(u):
        return n * math.log(-math.expm1(-u)) - math.log1p(u) if u > 0 else -math.inf
    return obj


def _log_monomial_norm(n: int) -> float:
    obj = _log_objective(n)
    hi = 2.0 * math.log(n + 2.0) + 10.0
    u, val = golden_section_max(obj, 0.0, hi, tol=1e-12)
    us = np.linspace(hi / SCAN_POINTS, hi, SCAN_POINTS)
    scan = n * np.log(-np.expm1(-us)) - np.log1p(us)
    # unimodality is assumed; the scan guards it
    assert np.max(scan) <= val + 1e-9, "log-weight monomial objective not unimodal"
    return math.exp(val)


def growth_sup(h, gamma: float, grid: DiskGrid, refine: bool = True) -> SupEstimate:
    """Weighted sup ``sup |h(z)| (1-|z|)**gamma`` on the grid, optionally polished.

    ``h`` is a :class:`HoloExpr` or a callable returning complex values.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    fn = (lambda z: evaluate(h, z)) if isinstance(h, HoloExpr) else h

    def F(z):
        return np.abs(fn(z)) * (1.0 - np.abs(z)) ** gamma

    return sup_weighted(F, grid, refine=refine)
