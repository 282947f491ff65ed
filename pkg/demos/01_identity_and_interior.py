"""Two operators at the extremes: the identity and a map that stays inside the disk.

On the Lipschitz space with alpha = beta = 1/2 the identity operator is bounded
but never compact. Its weighted supremum is exactly 1 everywhere, because the
target weight (1-|z|)^(1/2) cancels the source weight. Shrinking the disk by
phi(z) = z/2 keeps the image away from the boundary, and the essential norm
drops to zero.
"""
import numpy as np

from lipwco import DiskGrid, OperatorSpec, SpaceParam, Z, check_boundedness, const
from lipwco.essnorm import estimate_essential_norm

grid = DiskGrid()
params = SpaceParam(alpha=0.5, beta=0.5)
print(f"J = {params.J}, N = {params.N}, grid of {grid.size} points")

for name, phi in [("identity", Z), ("half disk", 0.5 * Z)]:
    op = OperatorSpec(const(1.0), phi, params, name)
    bounded = check_boundedness(op, grid)
    ess = estimate_essential_norm(op, grid, bounded=bounded)
    seq = bounded.discrete[0]
    print(f"\n{name}")
    print(f"  verdict {bounded.verdict}, S_1 = {bounded.S[1].value:.12f}")
    print(f"  a_1n for n = 0..5: {np.array2string(seq.values[:6], precision=6)}")
    print(f"  essential norm in [{ess.estimate_max:.4f}, {ess.estimate_sum:.4f}],"
          f" discrete {ess.discrete_estimate:.3g}, compact {ess.compact}")
    curve = ess.curves[1]
    for d, v, c in zip(curve.deltas[:4], curve.values[:4], curve.counts[:4]):
        print(f"    delta {d:.4f}: sup {v:.6f} over {c} points")
