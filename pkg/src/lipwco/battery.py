"""Built-in operator configurations with known behaviour.

Every entry records what the analysis should find: boundedness, compactness and,
where it is known in closed form, the limsup that governs the essential norm.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .criteria import OperatorSpec
from .expr import Const, HoloExpr, Sub, Z, poly, power
from .weights import SpaceParam

ONE = Const(1.0)


@dataclass(frozen=True)
class BatteryCase:
    name: str
    g: HoloExpr
    phi: HoloExpr
    alpha: float
    beta: float
    bounded: bool
    compact: bool | None = None
    essnorm: float | None = None  # exact max_j limsup when known

    def operator(self) -> OperatorSpec:
        return OperatorSpec(self.g, self.phi, SpaceParam(self.alpha, self.beta), self.name)


BATTERY: tuple[BatteryCase, ...] = (
    BatteryCase("identity_lip_half", ONE, Z, 0.5, 0.5, True, False, 1.0),
    BatteryCase("interior_half_disk", ONE, 0.5 * Z, 0.5, 0.5, True, True, 0.0),
    BatteryCase("pole_weight_unbounded", 1 / (1 - Z), Z, 0.5, 0.5, False),
    BatteryCase("growth_space_weighted", poly([0.5, 0.5]), Z, -0.5, -0.5, True, False, 1.0),
    BatteryCase("growth_gap_singular_weight", power(Sub(ONE, Z), -0.3), Z, -0.5, -0.2,
                True, False, 1.0),
    BatteryCase("growth_beta_minus_one", ONE, Z, -1.0, -1.0, True, False, 1.0),
    BatteryCase("bloch_multiplier_z", Z, Z, 0.0, 0.0, True, False, 1.0),
    BatteryCase("zygmund_multiplier_z", Z, Z, 1.0, 1.0, True, False, 1.0),
    BatteryCase("lip_three_halves_horocycle", ONE, poly([0.5, 0.5]), 1.5, 1.5, True, False,
                0.25 * math.sqrt(2.0)),
    BatteryCase("lip_two_identity", ONE, Z, 2.0, 2.0, True, False, 1.0),
    BatteryCase("lip_half_horocycle", ONE, poly([0.5, 0.5]), 0.5, 0.5, True, False,
                0.5 * math.sqrt(2.0)),
    BatteryCase("lip_half_square_map", Z, power(Z, 2), 0.5, 0.5, True, False, math.sqrt(2.0)),
    BatteryCase("alpha_above_beta_unbounded", ONE, Z, 0.5, -0.5, False),
    BatteryCase("alpha_below_beta_interior", ONE, 0.5 * Z, 0.2, 0.7, True, True, 0.0),
    BatteryCase("alpha_above_beta_interior", ONE, 0.5 * Z, 1.5, 0.5, True, True, 0.0),
    BatteryCase("index_gap_compact", ONE, Z, 0.5, 2.3, True, True, 0.0),
)


def battery_case(name: str) -> BatteryCase:
    for case in BATTERY:
        if case.name == name:
            return case
    raise KeyError(name)
