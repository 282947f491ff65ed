import math

import numpy as np
import pytest

from lipwco.criteria import (OperatorSpec, check_boundedness, continuous_check,
                             crosscheck_criteria, discrete_check, plateau_status, sample_orders)
from lipwco.expr import Z, const, poly
from lipwco.weights import SpaceParam

ONE = const(1.0)


def op(g, phi, a=0.5, b=0.5):
    return OperatorSpec(g, phi, SpaceParam(a, b))


def test_sample_orders():
    ns = sample_orders(256)
    assert ns[:65] == list(range(65))
    assert ns[65:] == [128, 256]


@pytest.mark.parametrize("vals, status", [
    (np.ones(20), "ok"), (np.linspace(1, 2, 20), "marginal"), (2.0 ** np.arange(20), "growing"),
    (np.zeros(8), "ok"), (np.array([1, np.inf]), "growing"),
])
def test_plateau_status(vals, status):
    assert plateau_status(vals) == status


def test_identity_continuous(grid):
    rep = continuous_check(op(ONE, Z), grid)
    assert rep.S[0].value == 0.0
    assert math.isclose(rep.S[1].value, 1.0, rel_tol=1e-12)
    assert rep.continuous_verdict == "bounded"


def test_interior_continuous(grid):
    rep = continuous_check(op(ONE, 0.5 * Z), grid)
    assert rep.S[1].value <= 1.0 and rep.continuous_verdict == "bounded"


def test_pole_weight_unbounded(grid):
    rep = check_boundedness(op(1 / (1 - Z), Z), grid)
    assert rep.verdict == "unbounded"
    assert rep.S[1].divergent


def test_identity_discrete_and_crosscheck(grid):
    rep = check_boundedness(op(ONE, Z), grid, n_max=128)
    seq = rep.discrete[0]
    assert seq.j == 1 and seq.plateau == "ok"
    assert np.allclose(seq.values, 1.0, rtol=0, atol=1e-12)
    assert math.isclose(rep.crosscheck[1], 1.0, rel_tol=1e-9)


def test_interior_discrete_decays(grid):
    rep = discrete_check(op(ONE, 0.5 * Z), grid, n_max=128)
    vals = rep.discrete[0].values
    assert vals[-1] < 1e-12
    assert np.all(np.isfinite(vals))
    assert np.all(np.diff(vals[1:20]) < 0)
    assert rep.discrete_verdict == "bounded"


def test_interior_ratios_in_corridor(grid):
    rep = check_boundedness(op(ONE, 0.5 * Z), grid, n_max=128)
    ratio = rep.crosscheck[1]
    assert ratio is None or 1 / 50 <= ratio <= 50


def test_zero_G_skips_ratio(grid):
    # g = 0 kills every G_j
    rep = check_boundedness(op(const(0.0), Z), grid, n_max=64)
    assert crosscheck_criteria(rep) == {1: None}
    assert rep.verdict == "bounded"


def test_self_map_violation(grid):
    with pytest.raises(ValueError):
        check_boundedness(op(ONE, 2 * Z), grid)


def test_n_max_floor(grid):
    with pytest.raises(ValueError):
        discrete_check(op(ONE, Z), grid, n_max=8)


def test_alpha_above_beta_identity_unbounded(grid):
    rep = check_boundedness(op(ONE, Z, 0.5, -0.5), grid, n_max=128)
    assert rep.verdict == "unbounded"


def test_horocycle_map_bounded(grid):
    rep = check_boundedness(op(ONE, poly([0.5, 0.5])), grid, n_max=128)
    assert rep.verdict == "bounded"
