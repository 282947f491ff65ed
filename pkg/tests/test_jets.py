import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lipwco.expr import Z, eval_jet, evaluate, log, power
from lipwco.jets import BranchCutError, ComplexJet, PoleError, jet_compose
from lipwco.oracle import fd_derivatives

disk_points = st.builds(
    lambda r, t: 0.7 * r * complex(math.cos(t), math.sin(t)),
    st.floats(0, 1), st.floats(0, 2 * math.pi),
)


def test_identity_jet():
    x = ComplexJet.identity(0.3 + 0.1j, 4)
    assert x.value == 0.3 + 0.1j
    assert np.allclose(x.derivatives(), [0.3 + 0.1j, 1, 0, 0, 0])


def test_product_rule():
    x = ComplexJet.identity(0.4, 3)
    cube = x * x * x
    assert np.allclose(cube.derivatives(), [0.064, 3 * 0.16, 6 * 0.4, 6])


def test_reciprocal_geometric_series():
    x = ComplexJet.identity(0.0, 5)
    r = (1 - x).reciprocal()
    assert np.allclose(r.coeffs, 1.0)
    assert np.allclose(r.derivatives(), [math.factorial(k) for k in range(6)])


def test_log_series():
    x = ComplexJet.identity(0.0, 5)
    lg = (1 - x).log()
    assert np.allclose(lg.coeffs, [0, -1, -1 / 2, -1 / 3, -1 / 4, -1 / 5])


def test_rpow_matches_binomial():
    x = ComplexJet.identity(0.0, 4)
    s = 0.5
    p = (1 + x).rpow(s)
    expect = [1.0]
    for k in range(1, 5):
        expect.append(expect[-1] * (s - k + 1) / k)
    assert np.allclose(p.coeffs, expect)


def test_ipow_negative_and_zero():
    x = ComplexJet.identity(0.5, 3)
    assert np.allclose(x.ipow(0).coeffs, [1, 0, 0, 0])
    assert np.allclose(x.ipow(-1).coeffs, x.reciprocal().coeffs)


def test_pole_raises():
    x = ComplexJet.identity(0.0, 2)
    with pytest.raises(PoleError):
        x.reciprocal()


def test_branch_cut_raises():
    x = ComplexJet.identity(-0.5, 2)
    with pytest.raises(BranchCutError):
        x.log()
    with pytest.raises(BranchCutError):
        x.rpow(0.5)


def test_compose_chain_rule():
    z0 = 0.2 + 0.1j
    inner = ComplexJet.identity(z0, 4) ** 2
    outer = (1 - ComplexJet.identity(inner.value, 4)).reciprocal()
    got = jet_compose(outer, inner)
    direct = (1 - ComplexJet.identity(z0, 4) ** 2).reciprocal()
    assert np.allclose(got.coeffs, direct.coeffs, rtol=1e-13)


def test_compose_center_mismatch():
    with pytest.raises(ValueError):
        jet_compose(ComplexJet.identity(0.1, 2), ComplexJet.identity(0.3, 2))


def test_vectorized_centers():
    z = np.array([0.1, 0.2j, -0.3 + 0.1j])
    jet = eval_jet(1 / (1 - Z), z, 3)
    assert jet.coeffs.shape == (4, 3)
    assert np.allclose(jet.coeffs, (1 / (1 - z))[None, :] ** np.arange(1, 5)[:, None])


@settings(max_examples=40, deadline=None)
@given(disk_points)
def test_jets_agree_with_contour_oracle(z):
    f = log(1 - Z / 2) * power(1 + Z * Z / 3, -2) + power(2 - Z, 0.5)
    ref = fd_derivatives(f, z, 4)
    got = eval_jet(f, z, 4).derivatives()
    assert np.allclose(got, ref, rtol=1e-8, atol=1e-10)
    assert np.isclose(got[0], evaluate(f, np.array([z]))[0])


@settings(max_examples=40, deadline=None)
@given(disk_points, disk_points)
def test_multiplication_commutes_and_distributes(a, b):
    x = ComplexJet.identity(a, 5)
    u = 1 + x * b
    v = (2 - x).reciprocal()
    assert np.allclose((u * v).coeffs, (v * u).coeffs)
    assert np.allclose(((u + v) * x).coeffs, (u * x + v * x).coeffs)
