"""Peak functions ``f_{w,j}`` used for lower bounds on the essential norm.

For a point ``w`` in the disk and ``j >= N``:

* ``beta < N = j``:  ``(1-|w|) (z-w)^j / (1 - z conj(w))^(j-beta+1)``
* ``beta = N = j``:  ``log(e/(1 - z conj(w)))^2 (z-w)^N / log(e/(1-|w|))``
* ``j > N``:         same power formula as the first case.

Each vanishes to order ``j`` at ``w``, has ``j``-th derivative at ``w`` of the
size ``Omega_{j,beta}(|w|)`` and stays bounded in the ``beta`` space.
:func:`verify_test_fn` measures all of this on a ring grid of ``w`` values.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .disksup import DiskGrid, lip_norm
from .expr import Const, HoloExpr, Log, RealPow, Sub, Z, eval_jet, evaluate, power
from .weights import critical_index, derivative_order, is_integer, omega

W_RADII = (0.5, 0.9, 0.99, 0.999)
W_ANGLES = 16
VANISH_TOL = 1e-10
STABILITY = 1.2

# |w| = 0.999 peaks sit about 4 levels past 1-|w| ~ 2**-10; keep them clear of the fit window
VERIFY_GRID = DiskGrid(K=18, angular_base=64, angular_cap=2**14)


class Case(enum.Enum):
    BETA_BELOW_N = "beta<N"
    BETA_EQUALS_N = "beta=N"
    ABOVE_N = "j>N"


@dataclass(frozen=True)
class TestFnSpec:
    __test__ = False  # not a pytest class

    w: complex
    j: int
    beta: float

    def __post_init__(self):
        if abs(self.w) >= 1:
            raise ValueError("w must lie in the open unit disk")
        if self.j < self.N:
            raise ValueError(f"j={self.j} below the critical index N={self.N}")

    @property
    def N(self) -> int:
        return critical_index(self.beta)

    @property
    def case(self) -> Case:
        if self.j > self.N:
            return Case.ABOVE_N
        if is_integer(self.beta) and round(self.beta) == self.N:
            return Case.BETA_EQUALS_N
        return Case.BETA_BELOW_N


def make_test_fn(spec: TestFnSpec) -> HoloExpr:
    w = complex(spec.w)
    wbar = w.conjugate()
    a = abs(w)
    one_minus_zwbar = Sub(Const(1.0), Const(wbar) * Z)
    vanish = power(Sub(Z, Const(w)), spec.j)
    if spec.case is Case.BETA_EQUALS_N:
        big_log = Sub(Const(1.0), Log(one_minus_zwbar))  # log(e/(1 - z wbar))
        scale = 1.0 - math.log1p(-a)
        return power(big_log, 2) * vanish / Const(scale)
    s = spec.j - spec.beta + 1.0
    den = power(one_minus_zwbar, s) if float(s).is_integer() else RealPow(one_minus_zwbar, s)
    return Const(1.0 - a) * vanish / den


def w_grid(radii=W_RADII, n_angles: int = W_ANGLES) -> np.ndarray:
    theta = 2.0 * np.pi * np.arange(n_angles) / n_angles
    return np.array([[r * np.exp(1j * t) for t in theta] for r in radii])


def ring_norm(j: int, beta: float, r: float, grid: DiskGrid) -> float:
    """``beta``-norm of ``f_{w,j}`` for ``|w| = r``.

    Rotating ``w`` rotates ``f`` and leaves the norm unchanged, and ring angles
    that are multiples of ``2 pi / W_ANGLES`` map the grid onto itself, so the
    value at ``w = r`` stands for the whole ring.
    """
    return lip_norm(make_test_fn(TestFnSpec(complex(r), j, beta)), beta, grid)


@lru_cache(maxsize=None)
def normalizer(j: int, beta: float, grid: DiskGrid = VERIFY_GRID) -> float:
    """Largest measured ``beta``-norm of ``f_{w,j}`` over the ``w`` rings."""
    return max(ring_norm(j, beta, r, grid) for r in W_RADII)


@dataclass
class PropertyReport:
    j: int
    beta: float
    J: int
    radii: tuple
    passed: dict[str, bool] = field(default_factory=dict)
    constants: dict[str, list[float]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    def as_dict(self) -> dict:
        return {
            "j": self.j, "beta": self.beta, "J": self.J, "radii": list(self.radii),
            "passed": dict(self.passed), "constants": self.constants,
            "failures": list(self.failures),
        }


def _ring_stable(per_ring: list[float]) -> bool:
    a, b = per_ring[-2], per_ring[-1]
    if a <= 0 or b <= 0:
        return False
    return max(a / b, b / a) <= STABILITY


def verify_test_fn(j: int, beta: float, J: int, grid: DiskGrid | None = None,
                   radii=W_RADII, n_angles: int = W_ANGLES) -> PropertyReport:
    """Check vanishing, peak size, derivative bounds, norm bound and local decay.

    Constants are measured per ring (min for the lower bound, max for upper
    bounds); a property passes when its constant is positive and finite and
    the two outermost rings agree within 20%.
    """
    grid = grid or VERIFY_GRID
    ws = w_grid(radii, n_angles)
    rep = PropertyReport(j, beta, J, tuple(radii))
    order = max(J, j)
    lower, upper, norms, local = [], {m: [] for m in range(j + 1, J + 1)}, [], []
    vanish_ok = True
    disk_half = 0.5 * np.sqrt(np.linspace(0, 1, 24))[:, None] * np.exp(
        2j * np.pi * np.arange(64) / 64)[None, :]
    for r, ring in zip(radii, ws):
        ring_low, ring_up, ring_local = math.inf, {m: 0.0 for m in upper}, 0.0
        for w in ring:
            spec = TestFnSpec(complex(w), j, beta)
            f = make_test_fn(spec)
            d = eval_jet(f, complex(w), order).derivatives()
            scale = max(1.0, abs(d[j]))
            if j >= 1 and np.max(np.abs(d[:j])) > VANISH_TOL * scale:
                vanish_ok = False
                rep.failures.append(f"(a) f^(k)(w) != 0 for k<{j} at w={w:.4g}")
            t = abs(w)
            peak = d[j]
            if abs(peak.imag) > 1e-8 * abs(peak):
                rep.failures.append(f"(b) f^({j})(w) not real at w={w:.4g}")
            ring_low = min(ring_low, peak.real / omega(j, beta, t))
            for m in upper:
                ring_up[m] = max(ring_up[m], abs(d[m]) / omega(m, beta, t))
            ring_local = max(ring_local, float(np.max(np.abs(evaluate(f, disk_half)))))
        lower.append(ring_low)
        for m in upper:
            upper[m].append(ring_up[m])
        norms.append(ring_norm(j, beta, r, grid))
        local.append(ring_local)

    rep.passed["a_vanishing"] = vanish_ok
    rep.constants["b_lower"] = lower
    rep.passed["b_lower"] = min(lower) > 0 and _ring_stable(lower)
    ok_c = True
    for m, vals in upper.items():
        rep.constants[f"c_upper_m{m}"] = vals
        ok_c &= all(math.isfinite(v) for v in vals) and _ring_stable(vals)
    rep.passed["c_upper"] = ok_c
    rep.constants["d_norm"] = norms
    rep.passed["d_norm"] = all(math.isfinite(v) for v in norms) and _ring_stable(norms)
    rep.constants["e_local"] = local
    rep.passed["e_local_decay"] = bool(np.all(np.diff(local[1:]) < 0) and local[-1] < local[0])
    for key, ok in rep.passed.items():
        if not ok:
            rep.failures.append(f"property {key} failed: {rep.constants.get(key, '')}")
    return rep


def check_distance_estimate(n_pairs: int = 1000, seed: int = 0) -> float:
    """Largest ``|z-w| / |1 - z conj(w)|`` over random pairs in the disk (must be <= 1)."""
    rng = np.random.default_rng(seed)
    r = np.sqrt(rng.random((2, n_pairs))) * 0.999999
    th = 2 * np.pi * rng.random((2, n_pairs))
    z, w = r * np.exp(1j * th)
    return float(np.max(np.abs(z - w) / np.abs(1 - z * np.conj(w))))


__all__ = ["Case", "TestFnSpec", "make_test_fn", "verify_test_fn", "PropertyReport", "w_grid",
           "normalizer", "check_distance_estimate", "derivative_order"]
