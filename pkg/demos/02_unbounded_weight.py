"""A weight with a boundary pole breaks boundedness.

g(z) = 1/(1-z) with phi(z) = z multiplies every derivative by a factor that
blows up at z = 1. The per-level maxima of the weighted supremum grow like
(1-r)^(-1), which the log-log slope reports as a growth exponent near -1.
The essential norm is then refused.
"""
from lipwco import DiskGrid, check_boundedness
from lipwco.battery import battery_case
from lipwco.essnorm import UnboundedOperatorError, continuous_essnorm

grid = DiskGrid()
op = battery_case("pole_weight_unbounded").operator()
rep = check_boundedness(op, grid)
s1 = rep.S[1]
print("level   r            max")
for k, (r, m) in enumerate(zip(grid.radii, s1.per_level)):
    print(f"{k:5d}   {r:.6f}   {m:.4f}")
print(f"growth exponent {s1.growth_exponent:.3f}, divergent {s1.divergent}")
print(f"discrete a_1n plateau: {rep.discrete[0].plateau}; verdict {rep.verdict}")
try:
    continuous_essnorm(op, grid=grid, bounded=rep)
except UnboundedOperatorError as exc:
    print(f"essential norm: {exc}")
