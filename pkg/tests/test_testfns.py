import math

import numpy as np
import pytest

from lipwco.expr import evaluate
from lipwco.testfns import (Case, TestFnSpec, check_distance_estimate, make_test_fn,
                            verify_test_fn, w_grid)


def test_power_case_at_origin():
    f = make_test_fn(TestFnSpec(0j, 1, 0.5))
    z = np.array([0.3, -0.2 + 0.5j])
    assert np.allclose(evaluate(f, z), z)


def test_log_case_at_origin():
    spec = TestFnSpec(0j, 1, 1.0)
    assert spec.case is Case.BETA_EQUALS_N
    z = np.array([0.3, -0.2 + 0.5j])
    assert np.allclose(evaluate(make_test_fn(spec), z), z)


@pytest.mark.parametrize("w, j, beta", [(0.5, 1, 0.5), (0.3j, 2, 1.0), (-0.9, 1, 1.0), (0.7, 0, -0.5)])
def test_vanishes_at_w(w, j, beta):
    f = make_test_fn(TestFnSpec(complex(w), j, beta))
    val = evaluate(f, np.array([complex(w)]))[0]
    assert abs(val) < 1e-14 or j == 0


def test_case_selection():
    assert TestFnSpec(0j, 2, 1.0).case is Case.ABOVE_N
    assert TestFnSpec(0j, 1, 0.5).case is Case.BETA_BELOW_N


def test_spec_validation():
    with pytest.raises(ValueError):
        TestFnSpec(1.0 + 0j, 1, 0.5)
    with pytest.raises(ValueError):
        TestFnSpec(0j, 0, 0.5)


def test_w_grid_shape():
    assert w_grid().shape == (4, 16)


def test_distance_estimate():
    assert check_distance_estimate() <= 1.0


@pytest.mark.parametrize("j, beta", [(1, 0.5), (1, 1.0), (0, -0.5)])
def test_verify_properties(j, beta):
    rep = verify_test_fn(j, beta, 1)
    assert rep.ok, rep.failures
