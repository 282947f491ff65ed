"""Coefficient functions of the J-th derivative of a weighted composition.

For holomorphic ``g``, ``phi`` and any ``f``,

    (g * f(phi))^(J)(z) = sum_{j=0..J} G_j[g, phi, J](z) * f^(j)(phi(z)).

Each ``G_j`` is a polynomial with non-negative integer coefficients in the
formal variables ``g0..gJ`` (derivatives of g) and ``p1..pJ`` (derivatives of
phi). Tables are produced by the recursion

    G_j[J+1] = D(G_j[J]) + G_{j-1}[J] * p1,

where ``D`` is the formal derivation ``gk -> g(k+1)``, ``pk -> p(k+1)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .expr import HoloExpr, eval_jet
from .jets import ComplexJet

INT64_MAX = 2**63 - 1

Monomial = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class GCoefficientTable:
    """``entries[j]`` maps exponent vectors over ``variables`` to integer coefficients."""

    J: int
    entries: tuple[dict[Monomial, int], ...]

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(f"g{k}" for k in range(self.J + 1)) + tuple(f"p{k}" for k in range(1, self.J + 1))

    def g_index(self, mono: Monomial) -> int:
        """Index k of the single g-derivative factor of ``mono``."""
        (k,) = [i for i in range(self.J + 1) if mono[i]]
        return k

    def p_exponents(self, mono: Monomial) -> Monomial:
        return mono[self.J + 1:]

    def as_text(self) -> str:
        return "\n".join(f"G_{j}[J={self.J}] = {format_poly(self, j)}" for j in range(self.J + 1))

    def as_json(self) -> dict:
        names = self.variables
        out = []
        for j, poly in enumerate(self.entries):
            terms = [
                {"coeff": c, "exponents": {names[i]: e for i, e in enumerate(m) if e}}
                for m, c in _ordered_terms(self, poly)
            ]
            out.append({"j": j, "terms": terms, "text": format_poly(self, j)})
        return {"J": self.J, "variables": list(names), "G": out}

    def dumps(self) -> str:
        return json.dumps(self.as_json(), indent=2)


def _ordered_terms(table: GCoefficientTable, poly: dict[Monomial, int]):
    J = table.J
    return sorted(poly.items(), key=lambda kv: (tuple(-e for e in kv[0][: J + 1][::-1]),
                                                 tuple(-e for e in kv[0][J + 1:])))


def format_poly(table: GCoefficientTable, j: int) -> str:
    poly = table.entries[j]
    if not poly:
        return "0"
    names = table.variables
    parts = []
    for mono, c in _ordered_terms(table, poly):
        factors = [names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(mono) if e]
        body = " ".join(factors) if factors else "1"
        parts.append(body if c == 1 else f"{c} {body}")
    return " + ".join(parts)


def _pad(mono: Monomial, J: int) -> Monomial:
    # layout (g0..gJ, p1..pJ) -> (g0..gJ+1, p1..pJ+1)
    return mono[: J + 1] + (0,) + mono[J + 1:] + (0,)


def _derive(poly: dict[Monomial, int], J: int) -> dict[Monomial, int]:
    """Formal derivative; ``poly`` is already in the padded layout for order J+1."""
    out: dict[Monomial, int] = {}
    width = 2 * (J + 1) + 1
    for mono, c in poly.items():
        for v, e in enumerate(mono):
            if not e:
                continue
            nxt = v + 1
            # gJ+1 is the last g slot and p_J+1 the last slot overall; neither is
            # populated before the derivation, so nxt never leaves its block.
            if nxt >= width or nxt == J + 2:
                raise AssertionError("derivative index overflow")
            new = list(mono)
            new[v] -= 1
            new[nxt] += 1
            key = tuple(new)
            out[key] = out.get(key, 0) + c * e
    return out


def _times_p1(poly: dict[Monomial, int], J: int) -> dict[Monomial, int]:
    p1 = J + 2  # slot of p1 in the order-(J+1) layout
    out = {}
    for mono, c in poly.items():
        new = list(mono)
        new[p1] += 1
        out[tuple(new)] = c
    return out


@lru_cache(maxsize=None)
def build_table(J: int) -> GCoefficientTable:
    if J < 0:
        raise ValueError("J must be non-negative")
    entries: list[dict[Monomial, int]] = [{(1,): 1}]
    for cur in range(J):
        padded = [{_pad(m, cur): c for m, c in poly.items()} for poly in entries]
        nxt: list[dict[Monomial, int]] = []
        for j in range(cur + 2):
            acc = _derive(padded[j], cur) if j <= cur else {}
            if j >= 1:
                for m, c in _times_p1(padded[j - 1], cur).items():
                    acc[m] = acc.get(m, 0) + c
            nxt.append({m: c for m, c in acc.items() if c})
        entries = nxt
    for poly in entries:
        for c in poly.values():
            assert 0 < c <= INT64_MAX, "G-table coefficient overflow"
    return GCoefficientTable(J, tuple(entries))


def eval_G_jets(table: GCoefficientTable, gjet: ComplexJet, phijet: ComplexJet) -> np.ndarray:
    """Values of all ``G_j`` given jets of g and phi of order at least ``J``."""
    J = table.J
    gd = gjet.derivatives()[: J + 1]
    pd = phijet.derivatives()[1: J + 1]
    raw = np.concatenate([gd, pd], axis=0)
    shape = raw.shape[1:]
    powers: dict[tuple[int, int], np.ndarray] = {}

    def pw(v, e):
        key = (v, e)
        if key not in powers:
            powers[key] = raw[v] ** e
        return powers[key]

    out = np.zeros((J + 1,) + shape, dtype=complex)
    for j, poly in enumerate(table.entries):
        for mono, c in poly.items():
            term = np.full(shape, float(c), dtype=complex)
            for v, e in enumerate(mono):
                if e:
                    term = term * pw(v, e)
            out[j] += term
    return out


def eval_G(table: GCoefficientTable, g: HoloExpr, phi: HoloExpr, z) -> np.ndarray:
    """``G_j[g, phi, J](z)`` for j = 0..J; leading axis indexes j."""
    J = table.J
    return eval_G_jets(table, eval_jet(g, z, J), eval_jet(phi, z, J))
