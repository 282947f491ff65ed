import math

import numpy as np
import pytest

from lipwco.criteria import OperatorSpec, check_boundedness
from lipwco.essnorm import (UnboundedOperatorError, continuous_essnorm, discrete_essnorm,
                            estimate_essential_norm, witness_lower_bound)
from lipwco.expr import Z, const
from lipwco.weights import SpaceParam

ONE = const(1.0)


def op(g, phi, a=0.5, b=0.5):
    return OperatorSpec(g, phi, SpaceParam(a, b))


def test_identity_continuous(grid):
    rep = continuous_essnorm(op(ONE, Z), grid=grid)
    assert np.allclose(rep.curves[1].values, 1.0)
    assert math.isclose(rep.estimate_max, 1.0, rel_tol=1e-12)
    assert not rep.compact


def test_interior_continuous(grid):
    rep = continuous_essnorm(op(ONE, 0.5 * Z), grid=grid)
    assert rep.estimate_max == 0.0 and rep.compact
    assert any("interior" in n for n in rep.notes)


def test_index_gap_short_circuit():
    rep = continuous_essnorm(op(ONE, Z, 0.5, 2.3))
    assert rep.compact and not rep.curves
    assert any("no computation needed" in n for n in rep.notes)


def test_discrete_identity(grid):
    rep = discrete_essnorm(op(ONE, Z), n_max=128, grid=grid)
    assert math.isclose(rep.discrete_estimate, 1.0, rel_tol=1e-12)


def test_discrete_interior(grid):
    rep = discrete_essnorm(op(ONE, 0.5 * Z), n_max=128, grid=grid)
    assert rep.discrete_estimate < 1e-6


def test_discrete_n_max_floor(grid):
    with pytest.raises(ValueError):
        discrete_essnorm(op(ONE, Z), n_max=32, grid=grid)


def test_refusal_for_unbounded(grid):
    o = op(1 / (1 - Z), Z)
    bounded = check_boundedness(o, grid, n_max=64)
    with pytest.raises(UnboundedOperatorError):
        continuous_essnorm(o, grid=grid, bounded=bounded)


def test_interval_and_agreement(grid):
    rep = estimate_essential_norm(op(ONE, Z), grid, n_max=128)
    lo, hi = rep.interval
    assert lo <= 1.0 + 1e-9 <= hi + 2e-9


def test_witness_identity(grid):
    pts = [1 - 2.0 ** -n for n in range(2, 7)]
    w = witness_lower_bound(op(ONE, Z), pts, grid)
    assert len(w[1]) == len(pts)
    assert min(w[1]) > 0.2
    assert np.all(np.diff(w[1]) >= 0)


def test_witness_interior_empty(grid):
    w = witness_lower_bound(op(ONE, 0.5 * Z), [0.9, 0.99], grid)
    assert w == {1: []}
