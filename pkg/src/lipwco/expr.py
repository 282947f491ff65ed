"""Expression trees for holomorphic functions on the unit disk.

Expressions are immutable and built either from the node classes or with the
usual operators::

    >>> from lipwco.expr import Z, log
    >>> f = 1 - log(1 - Z)
    >>> f.jet(0.0, 2).coeffs
    array([1. +0.j, 1. +0.j, 0.5+0.j])

Two evaluation routes exist on purpose. :func:`eval_jet` runs truncated Taylor
arithmetic and returns every derivative up to a given order. Calling an
expression (``f(z)``) evaluates plain values with numpy and never touches the
jet code, so it can serve as an independent reference.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from .jets import BranchCutError, ComplexJet, JetError, PoleError


class EvaluationError(ValueError):
    """Evaluation failed at a point; ``expr`` is the offending sub-expression."""

    def __init__(self, message: str, expr: "HoloExpr | None" = None, point=None):
        super().__init__(message if expr is None else f"{message} in {expr!r}")
        self.expr = expr
        self.point = point


class PoleAtPoint(EvaluationError):
    pass


class BranchCutViolation(EvaluationError):
    pass


class HoloExpr:
    """Base node. Subclasses are frozen dataclasses."""

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Sub(Const(0.0), self)

    def __pow__(self, exponent):
        return power(self, exponent)

    def __call__(self, z):
        return evaluate(self, z)

    def jet(self, z0, order: int) -> ComplexJet:
        return eval_jet(self, z0, order)

    def children(self) -> tuple["HoloExpr", ...]:
        return ()


@dataclass(frozen=True, repr=False)
class Const(HoloExpr):
    value: complex

    def __repr__(self):
        return f"Const({complex(self.value)!r})"


@dataclass(frozen=True, repr=False)
class _ZNode(HoloExpr):
    def __repr__(self):
        return "Z"


Z = _ZNode()


@dataclass(frozen=True, repr=False)
class _Binary(HoloExpr):
    left: HoloExpr
    right: HoloExpr
    symbol = "?"

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"({self.left!r} {self.symbol} {self.right!r})"


class Add(_Binary):
    symbol = "+"


class Sub(_Binary):
    symbol = "-"


class Mul(_Binary):
    symbol = "*"


class Div(_Binary):
    symbol = "/"


@dataclass(frozen=True, repr=False)
class IntPow(HoloExpr):
    base: HoloExpr
    exp: int

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("IntPow needs exp >= 0; use power() for reciprocals")

    def children(self):
        return (self.base,)

    def __repr__(self):
        return f"({self.base!r})**{self.exp}"


@dataclass(frozen=True, repr=False)
class RealPow(HoloExpr):
    """Principal branch ``base**exp`` for a real, possibly non-integer, exponent."""

    base: HoloExpr
    exp: float

    def children(self):
        return (self.base,)

    def __repr__(self):
        return f"({self.base!r})**{self.exp!r}"


@dataclass(frozen=True, repr=False)
class Log(HoloExpr):
    arg: HoloExpr

    def children(self):
        return (self.arg,)

    def __repr__(self):
        return f"Log({self.arg!r})"


@dataclass(frozen=True, repr=False)
class Poly(HoloExpr):
    """Polynomial ``sum_k coeffs[k] z**k``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r})"


def as_expr(x: Any) -> HoloExpr:
    if isinstance(x, HoloExpr):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return Const(complex(x))
    raise TypeError(f"cannot convert {type(x).__name__} to HoloExpr")


def const(c) -> Const:
    return Const(complex(c))


def poly(coeffs) -> Poly:
    return Poly(tuple(coeffs))


def log(x) -> Log:
    return Log(as_expr(x))


def power(base, exponent) -> HoloExpr:
    """Integer powers become IntPow (negative ones a reciprocal); others RealPow."""
    base = as_expr(base)
    if isinstance(exponent, (int, np.integer)) or float(exponent).is_integer():
        n = int(exponent)
        if n < 0:
            return Div(Const(1.0), IntPow(base, -n))
        return IntPow(base, n)
    return RealPow(base, float(exponent))


# -- jet evaluation ----------------------------------------------------------


def eval_jet(f: HoloExpr, z0, K: int) -> ComplexJet:
    """Taylor jet of ``f`` at ``z0`` (scalar or array) through order ``K``."""
    if K < 0:
        raise ValueError("order must be non-negative")
    z0 = np.asarray(z0, dtype=complex)
    if np.any(np.abs(z0) >= 1.0):
        raise ValueError("jet center must lie in the open unit disk")
    zjet = ComplexJet.identity(z0, K)
    cache: dict[int, ComplexJet] = {}

    def go(node: HoloExpr) -> ComplexJet:
        key = id(node)
        if key in cache:
            return cache[key]
        try:
            out = _jet_node(node, go, zjet)
        except PoleError as exc:
            raise PoleAtPoint(str(exc), node, _first_bad(z0)) from exc
        except BranchCutError as exc:
            raise BranchCutViolation(str(exc), node) from exc
        cache[key] = out
        return out

    return go(f)


def _jet_node(node, go, zjet: ComplexJet) -> ComplexJet:
    if node is Z or isinstance(node, _ZNode):
        return zjet
    if isinstance(node, Const):
        return ComplexJet.constant(node.value, zjet.center, zjet.order)
    if isinstance(node, Poly):
        acc = ComplexJet.constant(node.coeffs[-1] if node.coeffs else 0.0, zjet.center, zjet.order)
        for c in reversed(node.coeffs[:-1]):
            acc = acc * zjet + c
        return acc
    if isinstance(node, Add):
        return go(node.left) + go(node.right)
    if isinstance(node, Sub):
        return go(node.left) - go(node.right)
    if isinstance(node, Mul):
        return go(node.left) * go(node.right)
    if isinstance(node, Div):
        return go(node.left) / go(node.right)
    if isinstance(node, IntPow):
        return go(node.base).ipow(node.exp)
    if isinstance(node, RealPow):
        return go(node.base).rpow(node.exp)
    if isinstance(node, Log):
        return go(node.arg).log()
    raise TypeError(f"unknown node {node!r}")


def _first_bad(z0):
    return None if np.ndim(z0) else complex(z0)


# -- plain value evaluation (independent of the jet code) --------------------


def evaluate(f: HoloExpr, z):
    """Values of ``f`` at ``z`` using direct numpy complex arithmetic."""
    z = np.asarray(z, dtype=complex)
    if isinstance(f, _ZNode):
        return z
    if isinstance(f, Const):
        return np.full(z.shape, f.value, dtype=complex)
    if isinstance(f, Poly):
        return np.polyval(np.array(f.coeffs[::-1] or (0.0,), dtype=complex), z)
    if isinstance(f, Add):
        return evaluate(f.left, z) + evaluate(f.right, z)
    if isinstance(f, Sub):
        return evaluate(f.left, z) - evaluate(f.right, z)
    if isinstance(f, Mul):
        return evaluate(f.left, z) * evaluate(f.right, z)
    if isinstance(f, Div):
        den = evaluate(f.right, z)
        if np.any(np.abs(den) < 1e-300):
            raise PoleAtPoint("division by zero", f)
        return evaluate(f.left, z) / den
    if isinstance(f, IntPow):
        return evaluate(f.base, z) ** f.exp
    if isinstance(f, RealPow):
        b = evaluate(f.base, z)
        return np.exp(f.exp * np.log(b))
    if isinstance(f, Log):
        return np.log(evaluate(f.arg, z))
    raise TypeError(f"unknown node {f!r}")


# -- structural helpers ------------------------------------------------------


def substitute(f: HoloExpr, inner: HoloExpr) -> HoloExpr:
    """The expression ``f(inner(z))``: every ``Z`` in ``f`` replaced by ``inner``."""
    if isinstance(f, _ZNode):
        return inner
    if isinstance(f, Const):
        return f
    if isinstance(f, Poly):
        if not f.coeffs:
            return Const(0.0)
        acc: HoloExpr = Const(f.coeffs[-1])
        for c in reversed(f.coeffs[:-1]):
            acc = Add(Mul(acc, inner), Const(c))
        return acc
    if isinstance(f, _Binary):
        return type(f)(substitute(f.left, inner), substitute(f.right, inner))
    if isinstance(f, IntPow):
        return IntPow(substitute(f.base, inner), f.exp)
    if isinstance(f, RealPow):
        return RealPow(substitute(f.base, inner), f.exp)
    if isinstance(f, Log):
        return Log(substitute(f.arg, inner))
    raise TypeError(f"unknown node {f!r}")


def _parse_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ValueError(f"complex literal must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    return complex(v)


def _dump_complex(c: complex):
    c = complex(c)
    return [c.real, c.imag]


_BINARY = {"add": Add, "sub": Sub, "mul": Mul, "div": Div}


def from_json(obj) -> HoloExpr:
    """Parse the JSON expression literal used in run configurations.

    Kinds: ``z``, ``const`` (``value``), ``add``/``sub``/``mul``/``div``
    (``left``/``right``, or ``args`` for add and mul), ``pow`` (``base``,
    ``exp``), ``log`` (``arg``), ``poly`` (``coeffs``). Complex numbers are
    written as ``[re, im]`` pairs or plain reals.
    """
    if isinstance(obj, (int, float)) or (isinstance(obj, list) and len(obj) == 2
                                         and all(isinstance(x, (int, float)) for x in obj)):
        return Const(_parse_complex(obj))
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"malformed expression literal: {obj!r}")
    kind = obj["kind"]
    if kind == "z":
        return Z
    if kind == "const":
        return Const(_parse_complex(obj["value"]))
    if kind == "poly":
        return Poly(tuple(_parse_complex(c) for c in obj["coeffs"]))
    if kind in _BINARY:
        if "args" in obj:
            args = [from_json(a) for a in obj["args"]]
            if kind not in ("add", "mul") and len(args) != 2:
                raise ValueError(f"{kind} takes exactly two args")
            acc = args[0]
            for a in args[1:]:
                acc = _BINARY[kind](acc, a)
            return acc
        return _BINARY[kind](from_json(obj["left"]), from_json(obj["right"]))
    if kind == "pow":
        return power(from_json(obj["base"]), obj["exp"])
    if kind == "log":
        return Log(from_json(obj["arg"]))
    raise ValueError(f"unknown expression kind {kind!r}")


def to_json(f: HoloExpr) -> dict:
    if isinstance(f, _ZNode):
        return {"kind": "z"}
    if isinstance(f, Const):
        return {"kind": "const", "value": _dump_complex(f.value)}
    if isinstance(f, Poly):
        return {"kind": "poly", "coeffs": [_dump_complex(c) for c in f.coeffs]}
    for name, cls in _BINARY.items():
        if type(f) is cls:
            return {"kind": name, "left": to_json(f.left), "right": to_json(f.right)}
    if isinstance(f, IntPow):
        return {"kind": "pow", "base": to_json(f.base), "exp": f.exp}
    if isinstance(f, RealPow):
        return {"kind": "pow", "base": to_json(f.base), "exp": f.exp}
    if isinstance(f, Log):
        return {"kind": "log", "arg": to_json(f.arg)}
    raise TypeError(f"unknown node {f!r}")


__all__ = [
    "HoloExpr", "Const", "Z", "Add", "Sub", "Mul", "Div", "IntPow", "RealPow", "Log", "Poly",
    "EvaluationError", "PoleAtPoint", "BranchCutViolation", "JetError",
    "as_expr", "const", "poly", "log", "power", "eval_jet", "evaluate", "substitute",
    "from_json", "to_json",
]
