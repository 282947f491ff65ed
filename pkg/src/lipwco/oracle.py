"""Brute-force references for the jet, coefficient-table and supremum code.

Nothing here calls the jet arithmetic except :func:`defining_identity_check`,
whose two sides are computed by unrelated routes (composition of jets versus
the coefficient table).
"""
from __future__ import annotations

import math

import numpy as np

from .expr import HoloExpr, eval_jet, evaluate
from .gcoeff import build_table, eval_G
from .jets import jet_compose

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def fd_derivatives(f: HoloExpr, z: complex, k_max: int, step: float | None = None,
                   n_nodes: int = 64) -> np.ndarray:
    """``f^(k)(z)`` for k = 0..k_max from point values on a circle around ``z``.

    Uses the trapezoidal rule on the Cauchy integral (a centered difference
    stencil in the complex plane), whose error decays geometrically in
    ``n_nodes``. Only plain value evaluation of ``f`` is used.
    """
    if k_max > 8:
        raise ValueError("k_max above 8 is not supported")
    z = complex(z)
    if step is None:
        step = min(0.25, 0.5 * (1.0 - abs(z)))
    if step < 1e-6 or abs(z) + step >= 1.0:
        raise ValueError("stencil does not fit inside the disk")
    nodes = np.exp(2j * np.pi * np.arange(n_nodes) / n_nodes)
    vals = evaluate(f, z + step * nodes)
    out = np.empty(k_max + 1, dtype=complex)
    for k in range(k_max + 1):
        out[k] = math.factorial(k) * np.mean(vals * nodes ** (-k)) / step**k
    return out


def disk_samples(samples: int) -> np.ndarray:
    """Sunflower lattice: area-uniform radii, golden-angle increments; includes 0."""
    i = np.arange(samples)
    r = np.sqrt(i / samples)
    return r * np.exp(1j * GOLDEN_ANGLE * i)


def dense_sup(F, samples: int = 200_000) -> float:
    if samples < 100_000:
        raise ValueError("dense_sup needs at least 1e5 samples")
    return float(np.max(F(disk_samples(samples))))


def defining_identity_check(g: HoloExpr, phi: HoloExpr, f: HoloExpr, J: int, z: complex) -> float:
    """Relative mismatch between ``(g f(phi))^(J)(z)`` and ``sum_j G_j(z) f^(j)(phi(z))``."""
    z = np.asarray(z, dtype=complex)
    phijet = eval_jet(phi, z, J)
    w = phijet.value
    fjet = eval_jet(f, w, J)
    lhs = (eval_jet(g, z, J) * jet_compose(fjet, phijet)).derivative(J)
    G = eval_G(build_table(J), g, phi, z)
    fd = fjet.derivatives()
    terms = G * fd
    rhs = terms.sum(axis=0)
    scale = np.maximum(np.abs(terms).sum(axis=0), np.finfo(float).tiny)
    return float(np.max(np.abs(lhs - rhs) / scale))
