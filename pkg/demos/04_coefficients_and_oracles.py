"""Where the G_j come from, and how they are checked.

The J-th derivative of g * (f o phi) is a combination of f, f', ..., f^(J)
evaluated at phi(z). The coefficient table is generated symbolically. It is
then checked pointwise against composing Taylor jets directly, and the jets
themselves are checked against Cauchy-integral differences.
"""
import numpy as np

from lipwco.expr import Z, eval_jet, log, poly, power
from lipwco.gcoeff import build_table
from lipwco.oracle import defining_identity_check, dense_sup, fd_derivatives

for J in range(4):
    print(build_table(J).as_text(), end="\n\n")

g = poly([1.0, 0.3, -0.2])
phi = 0.5 * Z + 0.25 * power(Z, 3)
f = log(2 - Z) * power(1 - 0.5 * Z, -0.5)
rng = np.random.default_rng(0)
errs = [defining_identity_check(g, phi, f, 5, 0.8 * rng.random() * np.exp(2j * np.pi * rng.random()))
        for _ in range(50)]
print(f"defining identity, J = 5, 50 points: max relative error {max(errs):.2e}")

z = 0.4 - 0.3j
diff = np.abs(eval_jet(f, z, 4).derivatives() - fd_derivatives(f, z, 4))
print(f"jet vs contour derivatives at {z}: max abs difference {diff.max():.2e}")

print(f"dense sup of |z|(1-|z|): {dense_sup(lambda w: np.abs(w) * (1 - np.abs(w))):.6f}")
