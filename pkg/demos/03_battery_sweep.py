"""Sweep the built-in battery and compare both criteria on every configuration.

Each row prints the continuous and discrete verdicts and, for bounded
operators with N <= J, the limsup from the disk and the tail of the monomial
sequences. The two columns should agree within a factor of two.
"""
import time

from lipwco import BATTERY, DiskGrid, check_boundedness
from lipwco.essnorm import estimate_essential_norm

grid = DiskGrid()
print(f"{'case':30s} {'alpha':>6s} {'beta':>6s}  cont/disc verdicts      E_max     d_tail   known")
for case in BATTERY:
    t0 = time.perf_counter()
    op = case.operator()
    rep = check_boundedness(op, grid)
    line = (f"{case.name:30s} {case.alpha:6.2f} {case.beta:6.2f}  "
            f"{rep.continuous_verdict:>9s}/{rep.discrete_verdict:<9s}")
    if case.bounded and op.params.N <= op.params.J:
        ess = estimate_essential_norm(op, grid, bounded=rep)
        known = "" if case.essnorm is None else f"{case.essnorm:.4f}"
        line += f"  {ess.estimate_max:8.4f}  {ess.discrete_estimate:8.4f}  {known:>6s}"
    elif op.params.N > op.params.J:
        line += "  compact (N > J)"
    print(f"{line}   [{time.perf_counter() - t0:.1f}s]")
