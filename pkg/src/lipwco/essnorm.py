"""Two-sided estimates of the essential norm of a bounded weighted composition operator.

With ``E_j = limsup_{|phi(z)|->1} |G_j(z)| Omega_{j,beta}(|phi(z)|) (1-|z|)^(J-alpha)``
the essential norm is comparable to ``max_j E_j`` (lower bound) and bounded by
a multiple of ``sum_j E_j`` (upper bound), j ranging over ``N..J``. The same
limsups also equal the tail limsups of the monomial sequences ``d_{j,n}``.
Hidden constants are unknown, so the estimate is reported as the interval
``[max_j E_j, sum_j E_j]`` next to the discrete estimate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .criteria import (BoundednessReport, OperatorField, OperatorSpec, UNBOUNDED,
                       check_boundedness, discrete_check, sample_orders)
from .disksup import DiskGrid, LimsupCurve, default_deltas, limsup_restricted, lip_norm
from .expr import evaluate, substitute
from .testfns import VERIFY_GRID, TestFnSpec, make_test_fn, normalizer

COMPACT_TOL = 1e-3


class UnboundedOperatorError(ValueError):
    pass


@dataclass
class EssNormReport:
    params: object
    curves: dict[int, LimsupCurve] = field(default_factory=dict)
    tails: dict[int, tuple[list[int], np.ndarray]] = field(default_factory=dict)
    estimates: dict[int, float] = field(default_factory=dict)
    discrete_per_j: dict[int, float] = field(default_factory=dict)
    estimate_max: float = 0.0
    estimate_sum: float = 0.0
    discrete_estimate: float | None = None
    compact: bool = False
    witnesses: dict[int, list[float]] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def interval(self) -> tuple[float, float]:
        return (self.estimate_max, self.estimate_sum)


def _short_circuit(op: OperatorSpec) -> EssNormReport | None:
    p = op.params
    if p.N > p.J:
        rep = EssNormReport(p, compact=True)
        rep.discrete_estimate = 0.0
        rep.notes.append(f"N={p.N} > J={p.J}: compact, no computation needed")
        return rep
    return None


def _refuse_if_unbounded(bounded: BoundednessReport | None) -> None:
    if bounded is not None and bounded.verdict == UNBOUNDED:
        raise UnboundedOperatorError("essential norm undefined for unbounded operator")


def continuous_essnorm(op: OperatorSpec, deltas=None, grid: DiskGrid | None = None,
                       bounded: BoundednessReport | None = None,
                       fld: OperatorField | None = None,
                       report: EssNormReport | None = None) -> EssNormReport:
    short = _short_circuit(op)
    if short is not None:
        return short
    _refuse_if_unbounded(bounded)
    grid = grid or DiskGrid()
    deltas = default_deltas() if deltas is None else np.asarray(deltas, dtype=float)
    fld = fld or OperatorField(op, grid)
    p = op.params
    rep = report or EssNormReport(p)
    for j in range(p.N, p.J + 1):
        curve = limsup_restricted(fld.weighted(j), fld.absphi, deltas, grid)
        rep.curves[j] = curve
        rep.estimates[j] = curve.estimate
        if curve.note:
            rep.notes.append(f"j={j}: {curve.note}")
    vals = list(rep.estimates.values())
    rep.estimate_max = max(vals)
    rep.estimate_sum = float(sum(vals))
    rep.compact = bool(rep.estimate_max < COMPACT_TOL and all(
        np.all(np.diff(c.values) <= 1e-12) for c in rep.curves.values()))
    return rep


def discrete_essnorm(op: OperatorSpec, n_max: int = 256, tail_fraction: float = 0.5,
                     grid: DiskGrid | None = None, bounded: BoundednessReport | None = None,
                     fld: OperatorField | None = None,
                     report: EssNormReport | None = None) -> EssNormReport:
    """Tail maxima of ``d_{j,n}``; reuses the sequences of ``bounded`` when given."""
    if n_max < 64:
        raise ValueError("n_max must be at least 64")
    short = _short_circuit(op)
    if short is not None:
        return short
    _refuse_if_unbounded(bounded)
    grid = grid or DiskGrid()
    p = op.params
    rep = report or EssNormReport(p)
    seqs = bounded.discrete if bounded is not None and bounded.discrete else None
    if seqs is None or seqs[0].ns[-1] != n_max:
        seqs = discrete_check(op, grid, n_max, fld or OperatorField(op, grid)).discrete
    for seq in seqs:
        ns = np.asarray(seq.ns)
        positive = np.nonzero(ns >= 1)[0]
        start = positive[0] + int(math.floor(len(positive) * (1.0 - tail_fraction)))
        idx = np.arange(start, len(ns))
        rep.tails[seq.j] = ([int(n) for n in ns[idx]], seq.values[idx])
        rep.discrete_per_j[seq.j] = float(np.max(seq.values[idx]))
    rep.discrete_estimate = max(rep.discrete_per_j.values())
    return rep


def witness_lower_bound(op: OperatorSpec, boundary_points, grid: DiskGrid | None = None,
                        gate: float = 0.5) -> dict[int, list[float]]:
    """Running maxima of ``||C f_{phi(z_n), j}||_alpha`` over normalized test functions.

    Points whose image satisfies ``|phi(z)| <= gate`` are skipped; an interior
    map therefore yields empty lists.
    """
    grid = grid or DiskGrid()
    p = op.params
    out: dict[int, list[float]] = {}
    pts = [complex(z) for z in boundary_points]
    if not pts:
        raise ValueError("boundary_points must be nonempty")
    for j in range(max(p.N, 0), p.J + 1):
        vals: list[float] = []
        running = 0.0
        norm = normalizer(j, p.beta, VERIFY_GRID)
        for z in pts:
            w = complex(evaluate(op.phi, np.array([z]))[0])
            if abs(w) <= gate:
                continue
            f = make_test_fn(TestFnSpec(w, j, p.beta))
            image = op.g * substitute(f, op.phi)
            running = max(running, lip_norm(image, p.alpha, grid) / norm)
            vals.append(running)
        out[j] = vals
    return out


def estimate_essential_norm(op: OperatorSpec, grid: DiskGrid | None = None, n_max: int = 256,
                            deltas=None, tail_fraction: float = 0.5,
                            bounded: BoundednessReport | None = None) -> EssNormReport:
    """Continuous and discrete estimates together; checks boundedness first if needed."""
    short = _short_circuit(op)
    if short is not None:
        return short
    grid = grid or DiskGrid()
    fld = OperatorField(op, grid)
    if bounded is None:
        bounded = check_boundedness(op, grid, n_max, fld)
    rep = continuous_essnorm(op, deltas, grid, bounded, fld)
    discrete_essnorm(op, n_max, tail_fraction, grid, bounded, fld, rep)
    if rep.compact and rep.discrete_estimate is not None and rep.discrete_estimate >= COMPACT_TOL:
        rep.notes.append("continuous route says compact, discrete tail does not vanish")
    return rep


__all__ = [
    "EssNormReport", "UnboundedOperatorError", "continuous_essnorm", "discrete_essnorm",
    "witness_lower_bound", "estimate_essential_norm", "sample_orders", "COMPACT_TOL",
]
