"""Golden-section search for unimodal functions of one variable."""
from __future__ import annotations

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_max(f, a: float, b: float, tol: float = 1e-12, max_iter: int = 500):
    """Maximize a unimodal ``f`` on ``[a, b]``; returns ``(x, f(x))``.

    The endpoints are compared against the interior optimum at the end, so a
    monotone ``f`` still yields the right endpoint.
    """
    if b < a:
        a, b = b, a
    lo, hi = a, b
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
    best = max([(f1, x1), (f2, x2), (f(a), a), (f(b), b)], key=lambda p: p[0])
    return best[1], best[0]
