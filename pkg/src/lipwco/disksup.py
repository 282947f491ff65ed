"""Suprema of weighted magnitudes over the unit disk.

Points are sampled on geometric radial levels ``r_k = 1 - 2**-k`` so that
power and log weights in ``1 - r`` become (nearly) linear in ``k``. The
per-level maxima double as a divergence diagnostic: a supremum that keeps
growing as ``r -> 1`` shows up as a negative slope of ``log(max_k)`` against
``log(1 - r_k)``.

Point functions take a complex ndarray and return a real ndarray of the same
shape.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .expr import HoloExpr, eval_jet
from .optimize import golden_section_max

DIVERGENCE_SLOPE = -0.1
FIT_LEVELS = 4
MIN_RESTRICTED_POINTS = 32


@dataclass(frozen=True)
class DiskGrid:
    """Radial levels ``1 - 2**-k`` (k = 0..K) with ``m_k`` equally spaced angles.

    ``m_k = max(angular_base, angular_base * 2**(k-2))``; the default base 64
    gives ``max(64, 2**(k+4))``. ``angular_cap`` bounds ``m_k`` on deep grids
    where only the radial direction needs more levels.
    """

    K: int = 12
    angular_base: int = 64
    angular_cap: int | None = None

    def __post_init__(self):
        if self.K < FIT_LEVELS - 1:
            raise ValueError(f"need K >= {FIT_LEVELS - 1} for the divergence fit")
        if self.angular_base < 1:
            raise ValueError("angular_base must be positive")

    @cached_property
    def radii(self) -> np.ndarray:
        return 1.0 - 2.0 ** -np.arange(self.K + 1, dtype=float)

    @cached_property
    def counts(self) -> np.ndarray:
        k = np.arange(self.K + 1)
        m = np.maximum(self.angular_base, (self.angular_base * 2.0 ** (k - 2)).astype(int))
        if self.angular_cap:
            m = np.minimum(m, max(self.angular_cap, self.angular_base))
        return m.astype(int)

    @cached_property
    def level(self) -> np.ndarray:
        return np.repeat(np.arange(self.K + 1), self.counts)

    @cached_property
    def points(self) -> np.ndarray:
        chunks = []
        for r, m in zip(self.radii, self.counts):
            theta = 2.0 * np.pi * np.arange(m) / m
            chunks.append(r * np.exp(1j * theta))
        return np.concatenate(chunks)

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.counts)])

    def level_points(self, k: int) -> np.ndarray:
        return self.points[self.offsets[k]: self.offsets[k + 1]]

    @property
    def size(self) -> int:
        return int(self.offsets[-1])


@dataclass
class SupEstimate:
    value: float
    per_level: np.ndarray
    divergent: bool
    growth_exponent: float
    argmax: complex = 0j
    radii: np.ndarray = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {
            "value": _finite(self.value),
            "divergent": bool(self.divergent),
            "growth_exponent": _finite(self.growth_exponent),
            "per_level": [_finite(v) for v in self.per_level],
        }


def _finite(x):
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf"
    return x


def growth_exponent(per_level: np.ndarray, radii: np.ndarray) -> float:
    """Slope of ``log(max_k)`` against ``log(1 - r_k)`` over the outermost levels."""
    y = np.asarray(per_level[-FIT_LEVELS:], dtype=float)
    x = np.log(1.0 - radii[-FIT_LEVELS:])
    if np.any(~np.isfinite(y)):
        return -math.inf
    if y[-1] <= 0.0:
        return 0.0
    keep = y > 0
    if keep.sum() < 2:
        return 0.0
    return float(np.polyfit(x[keep], np.log(y[keep]), 1)[0])


def sup_from_values(values: np.ndarray, grid: DiskGrid) -> SupEstimate:
    """Assemble a :class:`SupEstimate` from ``F`` sampled at ``grid.points``."""
    values = np.asarray(values, dtype=float)
    values = np.where(np.isnan(values), np.inf, values)
    per_level = np.maximum.reduceat(values, grid.offsets[:-1])
    slope = growth_exponent(per_level, grid.radii)
    i = int(np.argmax(values))
    return SupEstimate(
        value=float(values[i]),
        per_level=per_level,
        divergent=bool(slope < DIVERGENCE_SLOPE or not np.isfinite(values[i])),
        growth_exponent=slope,
        argmax=complex(grid.points[i]),
        radii=grid.radii,
    )


def sup_weighted(F, grid: DiskGrid, workers: int | None = None, refine: bool = False) -> SupEstimate:
    """Max of ``F`` over the grid, with per-level maxima and a divergence verdict.

    ``workers > 1`` evaluates radial levels concurrently; the reduction is a
    max, so the result does not depend on scheduling.
    """
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda k: np.asarray(F(grid.level_points(k)), dtype=float),
                                  range(grid.K + 1)))
        values = np.concatenate(parts)
    else:
        values = np.asarray(F(grid.points), dtype=float)
    est = sup_from_values(values, grid)
    if refine:
        est = refine_sup(F, grid, est, values)
    return est


def refine_sup(F, grid: DiskGrid, est: SupEstimate, values: np.ndarray,
               n_candidates: int = 2, rounds: int = 2, tol: float = 1e-11) -> SupEstimate:
    """Polish the grid maximum by alternating golden-section searches in r and theta.

    Starts from the best grid points on distinct levels and stays inside the
    neighbouring radial levels, so the value can only increase. Divergent
    estimates are returned unchanged.
    """
    if est.divergent or not np.isfinite(est.value) or est.value <= 0.0:
        return est
    order = np.argsort(values)[::-1]
    seen_levels: list[int] = []
    starts = []
    for i in order:
        k = int(grid.level[i])
        if k in seen_levels:
            continue
        seen_levels.append(k)
        starts.append((k, grid.points[i]))
        if len(starts) >= n_candidates:
            break

    def F1(z):
        return float(np.asarray(F(np.array([z])), dtype=float)[0])

    best_val, best_z = est.value, est.argmax
    for k, z0 in starts:
        r_lo = grid.radii[max(k - 1, 0)]
        r_hi = grid.radii[min(k + 1, grid.K)]
        dtheta = 2.0 * np.pi / grid.counts[k]
        r, theta = abs(z0), float(np.angle(z0))
        val = F1(z0)
        for _ in range(rounds):
            r_new, v = golden_section_max(lambda s: F1(s * np.exp(1j * theta)), r_lo, r_hi, tol=tol)
            if v >= val:
                r, val = r_new, v
            if r > 0.0:
                t_new, v = golden_section_max(lambda t: F1(r * np.exp(1j * t)),
                                              theta - dtheta, theta + dtheta, tol=tol)
                if v >= val:
                    theta, val = t_new, v
        if np.isfinite(val) and val > best_val:
            best_val, best_z = val, complex(r * np.exp(1j * theta))
    return replace(est, value=float(best_val), argmax=best_z)


@dataclass
class LimsupCurve:
    deltas: np.ndarray
    values: np.ndarray
    counts: np.ndarray
    estimate: float
    note: str = ""

    def as_dict(self) -> dict:
        return {
            "deltas": [float(d) for d in self.deltas],
            "values": [_finite(v) for v in self.values],
            "counts": [int(c) for c in self.counts],
            "estimate": _finite(self.estimate),
            "note": self.note,
        }


def default_deltas(m_max: int = 10) -> np.ndarray:
    return 2.0 ** -np.arange(1, m_max + 1, dtype=float)


def limsup_restricted(F, gate, deltas, grid: DiskGrid,
                      min_points: int = MIN_RESTRICTED_POINTS) -> LimsupCurve:
    """Restricted suprema ``sup{F(z) : gate(z) > 1 - delta}`` along decreasing ``deltas``.

    ``F`` and ``gate`` may be callables or arrays already sampled on the grid.
    The estimate is the value at the smallest delta whose restricted set has at
    least ``min_points`` points.
    """
    deltas = np.asarray(deltas, dtype=float)
    if np.any(np.diff(deltas) >= 0) or np.any((deltas <= 0) | (deltas >= 1)):
        raise ValueError("deltas must be strictly decreasing in (0, 1)")
    fv = np.asarray(F(grid.points) if callable(F) else F, dtype=float)
    gv = np.asarray(gate(grid.points) if callable(gate) else gate, dtype=float)
    values = np.zeros(len(deltas))
    counts = np.zeros(len(deltas), dtype=int)
    for m, d in enumerate(deltas):
        mask = gv > 1.0 - d
        counts[m] = int(mask.sum())
        values[m] = float(np.max(fv[mask])) if counts[m] else 0.0
    ok = np.nonzero(counts >= min_points)[0]
    if counts.sum() == 0:
        return LimsupCurve(deltas, values, counts, 0.0, "map stays interior")
    if len(ok) == 0:
        return LimsupCurve(deltas, values, counts, 0.0,
                           f"no restricted set reaches {min_points} points")
    return LimsupCurve(deltas, values, counts, float(values[ok[-1]]))


def lip_norm(f: HoloExpr, alpha: float, grid: DiskGrid, refine: bool = True) -> float:
    """``sum_{j<J} |f^(j)(0)| + sup |f^(J)(z)| (1-|z|)^(J-alpha)`` with the smallest admissible J.

    Returns ``inf`` when the weighted supremum diverges on the grid.
    """
    from .weights import derivative_order

    J = derivative_order(alpha)
    head = 0.0
    if J > 0:
        head = float(np.sum(np.abs(eval_jet(f, 0.0, J - 1).derivatives())))
    gamma = J - alpha

    def F(z):
        return np.abs(eval_jet(f, z, J).derivative(J)) * (1.0 - np.abs(z)) ** gamma

    est = sup_weighted(F, grid, refine=refine)
    if est.divergent:
        return math.inf
    return head + est.value
