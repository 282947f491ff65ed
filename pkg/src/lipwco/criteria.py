"""Boundedness of weighted composition operators between Lipschitz-scale spaces.

``C(f) = g * f(phi)`` maps the ``beta`` space into the ``alpha`` space boundedly
iff for every ``j = 0..J``

    S_j = sup_z |G_j(z)| Omega_{j,beta}(|phi(z)|) (1-|z|)^(J-alpha) < inf.

For ``j >= N`` the same condition can be tested through monomials,

    a_{j,n} = ||G_j phi^n||_{alpha-J} / ||z^n||_{Omega_{j,beta}},

whose supremum over ``n`` is comparable to ``S_j``. Both routes are computed
and compared; any disagreement is reported as inconclusive rather than guessed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .disksup import DiskGrid, SupEstimate, refine_sup, sup_from_values
from .expr import HoloExpr, eval_jet, evaluate
from .gcoeff import GCoefficientTable, build_table, eval_G, eval_G_jets
from .weights import SpaceParam, monomial_norm, weight_spec

SELF_MAP_TOL = 1e-9
PLATEAU_OK = 1.05
PLATEAU_MARGINAL = 1.5
CORRIDOR = (1.0 / 50.0, 50.0)

BOUNDED, UNBOUNDED, INCONCLUSIVE = "bounded", "unbounded", "inconclusive"


@dataclass(frozen=True, eq=False)
class OperatorSpec:
    g: HoloExpr
    phi: HoloExpr
    params: SpaceParam
    name: str = ""

    @property
    def table(self) -> GCoefficientTable:
        return build_table(self.params.J)

    def validate(self, grid: DiskGrid) -> None:
        m = float(np.max(np.abs(evaluate(self.phi, grid.points))))
        if m > 1.0 + SELF_MAP_TOL:
            raise ValueError(f"phi is not a self-map of the disk: sup|phi| = {m:.6g} on the grid")


class OperatorField:
    """``G_j``, ``|phi|`` and the target weight sampled once on a grid."""

    def __init__(self, op: OperatorSpec, grid: DiskGrid):
        self.op = op
        self.grid = grid
        p = op.params
        z = grid.points
        J = p.J
        phijet = eval_jet(op.phi, z, J)
        self.G = eval_G_jets(op.table, eval_jet(op.g, z, J), phijet)
        self.absG = np.abs(self.G)
        self.phi = phijet.value
        self.absphi = np.minimum(np.abs(self.phi), np.nextafter(1.0, 0.0))
        self.gamma = J - p.alpha
        self.target = (1.0 - np.abs(z)) ** self.gamma

    def weighted(self, j: int) -> np.ndarray:
        """``|G_j| Omega_{j,beta}(|phi|) (1-|z|)^(J-alpha)`` on the grid."""
        w = weight_spec(j, self.op.params.beta)(self.absphi)
        with np.errstate(invalid="ignore"):
            out = self.absG[j] * w * self.target
        return np.where(self.absG[j] == 0.0, 0.0, out)

    def G_at(self, j: int, z) -> np.ndarray:
        return eval_G(self.op.table, self.op.g, self.op.phi, z)[j]


def sample_orders(n_max: int, dense: int = 64) -> list[int]:
    """All n up to ``dense``, then powers of two, always ending at ``n_max``."""
    ns = list(range(0, min(dense, n_max) + 1))
    k = dense * 2
    while k < n_max:
        ns.append(k)
        k *= 2
    if ns[-1] != n_max:
        ns.append(n_max)
    return ns


@dataclass
class DiscreteSequence:
    j: int
    ns: list[int]
    values: np.ndarray
    plateau: str  # "ok" | "marginal" | "growing"

    @property
    def sup(self) -> float:
        return float(np.max(self.values)) if len(self.values) else 0.0

    @property
    def running_sup(self) -> np.ndarray:
        return np.maximum.accumulate(self.values)

    def as_dict(self, head: int = 8) -> dict:
        return {
            "j": self.j,
            "sup": self.sup,
            "plateau": self.plateau,
            "sequence_head": [float(v) for v in self.values[:head]],
        }


@dataclass
class BoundednessReport:
    params: SpaceParam
    S: list[SupEstimate] = field(default_factory=list)
    membership: dict[int, SupEstimate] = field(default_factory=dict)
    discrete: list[DiscreteSequence] = field(default_factory=list)
    continuous_verdict: str | None = None
    discrete_verdict: str | None = None
    crosscheck: dict[int, float | None] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        c, d = self.continuous_verdict, self.discrete_verdict
        if c is None:
            return d or INCONCLUSIVE
        if d is None:
            return c
        return c if c == d else INCONCLUSIVE


def plateau_status(values: np.ndarray) -> str:
    """Compare the full sup with the sup over the first three quarters of the sequence."""
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        return "growing"
    cut = len(values) - max(1, math.ceil(len(values) / 4))
    head = float(np.max(values[:cut])) if cut > 0 else 0.0
    total = float(np.max(values))
    if total == 0.0 or total <= PLATEAU_OK * head:
        return "ok"
    if total <= PLATEAU_MARGINAL * head:
        return "marginal"
    return "growing"


def continuous_check(op: OperatorSpec, grid: DiskGrid, fld: OperatorField | None = None,
                     report: BoundednessReport | None = None) -> BoundednessReport:
    fld = fld or OperatorField(op, grid)
    report = report or BoundednessReport(op.params)
    report.S = [sup_from_values(fld.weighted(j), grid) for j in range(op.params.J + 1)]
    report.continuous_verdict = UNBOUNDED if any(s.divergent for s in report.S) else BOUNDED
    return report


def _a_sequence(fld: OperatorField, j: int, ns: list[int], refine: bool) -> np.ndarray:
    grid = fld.grid
    p = fld.op.params
    w = weight_spec(j, p.beta)
    base = fld.absG[j] * fld.target
    if not np.any(base):
        return np.zeros(len(ns))
    with np.errstate(divide="ignore"):
        logphi = np.log(fld.absphi)
    out = np.zeros(len(ns))
    for i, n in enumerate(ns):
        vals = base * np.exp(n * logphi) if n else base
        est = sup_from_values(vals, grid)
        if est.divergent:
            out[i] = math.inf
            continue
        if refine:
            gamma = fld.gamma

            def F(z, n=n):
                return (np.abs(fld.G_at(j, z)) * np.abs(evaluate(fld.op.phi, z)) ** n
                        * (1.0 - np.abs(z)) ** gamma)

            est = refine_sup(F, grid, est, vals)
        out[i] = est.value / monomial_norm(n, w)
    return out


def discrete_check(op: OperatorSpec, grid: DiskGrid, n_max: int = 256,
                   fld: OperatorField | None = None, report: BoundednessReport | None = None,
                   refine: bool = True) -> BoundednessReport:
    if n_max < 16:
        raise ValueError("n_max must be at least 16")
    fld = fld or OperatorField(op, grid)
    report = report or BoundednessReport(op.params)
    p = op.params
    verdicts = []
    for j in range(min(p.N - 1, p.J) + 1):
        est = sup_from_values(fld.absG[j] * fld.target, grid)
        report.membership[j] = est
        verdicts.append("growing" if est.divergent else "ok")
    ns = sample_orders(n_max)
    report.discrete = []
    for j in range(p.N, p.J + 1):
        vals = _a_sequence(fld, j, ns, refine)
        seq = DiscreteSequence(j, ns, vals, plateau_status(vals))
        report.discrete.append(seq)
        verdicts.append(seq.plateau)
    if "growing" in verdicts:
        report.discrete_verdict = UNBOUNDED
    elif "marginal" in verdicts:
        report.discrete_verdict = INCONCLUSIVE
    else:
        report.discrete_verdict = BOUNDED
    return report


def crosscheck_criteria(report: BoundednessReport) -> dict[int, float | None]:
    """Ratios ``S_j / sup_n a_{j,n}``; ``None`` where either side is zero or infinite."""
    out: dict[int, float | None] = {}
    for seq in report.discrete:
        s = report.S[seq.j]
        d = seq.sup
        if s.divergent or not math.isfinite(d) or (s.value == 0.0 and d == 0.0):
            out[seq.j] = None
            continue
        if s.value == 0.0 or d == 0.0:
            out[seq.j] = None
            report.flags.append(f"j={seq.j}: one side vanishes (S={s.value:.3g}, a={d:.3g})")
            continue
        ratio = s.value / d
        out[seq.j] = ratio
        if not CORRIDOR[0] <= ratio <= CORRIDOR[1]:
            report.flags.append(f"j={seq.j}: ratio {ratio:.3g} outside comparability corridor")
    report.crosscheck = out
    return out


def check_boundedness(op: OperatorSpec, grid: DiskGrid | None = None, n_max: int = 256,
                      fld: OperatorField | None = None) -> BoundednessReport:
    """Continuous and discrete criteria plus their cross-check."""
    grid = grid or DiskGrid()
    op.validate(grid)
    fld = fld or OperatorField(op, grid)
    report = continuous_check(op, grid, fld)
    discrete_check(op, grid, n_max, fld, report)
    crosscheck_criteria(report)
    return report
