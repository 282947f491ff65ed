"""The ten acceptance criteria, each at its stated tolerance and runtime budget.

Every test records one PASS/FAIL line; pytest prints them together in an
"acceptance criteria" section at the end of the run.
"""
import json
import math
import time

import numpy as np
import pytest

from lipwco.battery import BATTERY, battery_case
from lipwco.cli import main
from lipwco.criteria import check_boundedness
from lipwco.disksup import DiskGrid
from lipwco.essnorm import (COMPACT_TOL, UnboundedOperatorError, continuous_essnorm,
                            estimate_essential_norm)
from lipwco.expr import Z, poly
from lipwco.gcoeff import build_table
from lipwco.oracle import defining_identity_check
from lipwco.testfns import verify_test_fn
from lipwco.weights import Branch, SpaceParam, critical_index, monomial_norm, weight_spec


def test_c01_gtable_exact(criterion):
    t0 = time.perf_counter()
    expected = {
        0: ["G_0[J=0] = g0"],
        1: ["G_0[J=1] = g1", "G_1[J=1] = g0 p1"],
        2: ["G_0[J=2] = g2", "G_1[J=2] = 2 g1 p1 + g0 p2", "G_2[J=2] = g0 p1^2"],
    }
    got = {J: build_table.__wrapped__(J).as_text().splitlines() for J in expected}
    dt = time.perf_counter() - t0
    ok = got == expected and dt < 1.0
    assert criterion(1, "G-table exactness", ok, f"{dt:.3f}s"), got


def test_c02_defining_identity(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2)
    worst = 0.0
    for J in range(7):
        for _ in range(100):
            g = poly(rng.normal(size=5) + 1j * rng.normal(size=5))
            c = rng.normal(size=5) + 1j * rng.normal(size=5)
            phi = poly(0.9 * c / np.abs(c).sum())
            f = poly(rng.normal(size=9) + 1j * rng.normal(size=9))
            z = 0.9 * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
            worst = max(worst, defining_identity_check(g, phi, f, J, z))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-10 and dt < 10.0
    assert criterion(2, "defining identity", ok, f"max rel err {worst:.2e}, {dt:.2f}s")


def _brute_monomial(n, w, s):
    t = -np.expm1(-s)
    return float(np.max(np.exp(n * np.log(t[1:])) / w(t[1:]))) if n else 1.0


def test_c03_monomial_norms(criterion):
    t0 = time.perf_counter()
    # dense samples in s = -log(1-t) cover the peak at t ~ 1 - gamma/n for every n <= 4096
    s = np.linspace(0.0, 25.0, 50_001)
    ns = sorted(set(range(0, 65)) | {2 ** k for k in range(7, 13)} | {100, 1000, 3000, 4096})
    cases = [(1, 0.5), (2, 0.5), (1, -1.0), (3, 1.5), (1, 1.0), (2, 2.0)]
    worst_rel, worst_spread = 0.0, 0.0
    for j, beta in cases:
        w = weight_spec(j, beta)
        for n in ns:
            exact = monomial_norm(n, w)
            worst_rel = max(worst_rel, abs(exact - _brute_monomial(n, w, s)) / exact)
        corridor = np.arange(16, 4097)
        if w.branch is Branch.LOG:
            ratios = [monomial_norm(int(n), w) * math.log(n + 2) for n in corridor]
        else:
            ratios = [monomial_norm(int(n), w) * (n + 1) ** w.gap for n in corridor]
        worst_spread = max(worst_spread, max(ratios) / min(ratios))
    dt = time.perf_counter() - t0
    ok = worst_rel <= 1e-6 and worst_spread < 10 and dt < 5.0
    assert criterion(3, "monomial norms", ok,
                     f"rel err {worst_rel:.1e}, corridor spread {worst_spread:.2f}, {dt:.2f}s")


def test_c04_identity_operator(criterion):
    t0 = time.perf_counter()
    op = battery_case("identity_lip_half").operator()
    grid = DiskGrid()
    bounded = check_boundedness(op, grid)
    ess = estimate_essential_norm(op, grid, bounded=bounded)
    dt = time.perf_counter() - t0
    a = bounded.discrete[0].values
    lo, hi = ess.interval
    checks = {
        "verdict": bounded.verdict == "bounded",
        "S_1": abs(bounded.S[1].value - 1.0) <= 1e-3,
        "a_1n": bool(np.all(np.abs(a - 1.0) <= 1e-12)),
        "interval": lo - 1e-12 <= 1.0 <= hi + 1e-12,
        "estimate_max": abs(ess.estimate_max - 1.0) <= 0.05,
        "compact": ess.compact is False,
        "runtime": dt < 30.0,
    }
    ok = all(checks.values())
    assert criterion(4, "identity operator", ok,
                     f"S_1={bounded.S[1].value:.12f}, max|a-1|={np.max(np.abs(a - 1)):.1e}, "
                     f"interval=[{lo:.6f}, {hi:.6f}], {dt:.1f}s"), checks


def test_c05_interior_map(criterion):
    t0 = time.perf_counter()
    op = battery_case("interior_half_disk").operator()
    ess = estimate_essential_norm(op, DiskGrid())
    dt = time.perf_counter() - t0
    ok = (ess.compact and ess.estimate_max == 0.0 and ess.estimate_sum == 0.0
          and all(np.all(c.counts == 0) for c in ess.curves.values())
          and ess.discrete_estimate <= 1e-6 and dt < 30.0)
    assert criterion(5, "interior map", ok,
                     f"continuous {ess.estimate_max}, discrete {ess.discrete_estimate:.1e}, {dt:.1f}s")


def test_c06_automatic_compactness(criterion, monkeypatch):
    import lipwco.essnorm as essnorm

    def no_sampling(*args, **kwargs):
        raise AssertionError("sampling attempted")

    monkeypatch.setattr(essnorm, "OperatorField", no_sampling)
    monkeypatch.setattr(essnorm, "limsup_restricted", no_sampling)
    t0 = time.perf_counter()
    op = battery_case("index_gap_compact").operator()
    ess = estimate_essential_norm(op)
    dt = time.perf_counter() - t0
    ok = (op.params.J, op.params.N) == (1, 3) and ess.compact and dt < 1.0 and any(
        "no computation needed" in n for n in ess.notes)
    assert criterion(6, "automatic compactness", ok, f"{dt * 1e3:.2f} ms")


def test_c07_unbounded_detection(criterion):
    t0 = time.perf_counter()
    op = battery_case("pole_weight_unbounded").operator()
    grid = DiskGrid()
    bounded = check_boundedness(op, grid)
    refused = False
    try:
        continuous_essnorm(op, grid=grid, bounded=bounded)
    except UnboundedOperatorError:
        refused = True
    dt = time.perf_counter() - t0
    s1 = bounded.S[1]
    ok = (bounded.verdict == "unbounded" and s1.divergent and s1.growth_exponent <= -0.5
          and refused and dt < 30.0)
    assert criterion(7, "unbounded detection", ok,
                     f"growth exponent {s1.growth_exponent:.3f}, refused={refused}, {dt:.1f}s")


def _agree(a, b):
    if a <= COMPACT_TOL and b <= COMPACT_TOL:
        return True
    if a <= 0 or b <= 0:
        return False
    return max(a / b, b / a) <= 2.0


def test_c08_criteria_equivalence(criterion):
    t0 = time.perf_counter()
    grid = DiskGrid()
    rows, ok = [], True
    betas = set()
    for case in BATTERY:
        op = case.operator()
        betas.add(case.beta)
        bounded = check_boundedness(op, grid)
        agree = bounded.continuous_verdict == bounded.discrete_verdict
        truth = bounded.verdict == ("bounded" if case.bounded else "unbounded")
        ess_ok = True
        if case.bounded and op.params.N <= op.params.J:
            ess = estimate_essential_norm(op, grid, bounded=bounded)
            ess_ok = _agree(ess.estimate_max, ess.discrete_estimate)
            rows.append((case.name, ess.estimate_max, ess.discrete_estimate))
        ok &= agree and truth and ess_ok
        assert agree and truth and ess_ok, case.name
    spans = (any(b < 0 for b in betas) and 0.0 in betas and any(0 < b < 1 for b in betas)
             and 1.0 in betas and any(b > 1 and float(b).is_integer() for b in betas)
             and any(not float(b).is_integer() for b in betas)
             and any(c.alpha > c.beta for c in BATTERY) and any(c.alpha < c.beta for c in BATTERY))
    dt = time.perf_counter() - t0
    ok = ok and spans and len(BATTERY) >= 12 and dt < 300.0
    assert criterion(8, "criteria equivalence", ok, f"{len(BATTERY)} configs, {dt:.1f}s")


def _battery_pairs():
    pairs = set()
    for case in BATTERY:
        p = SpaceParam(case.alpha, case.beta)
        for j in range(critical_index(case.beta), p.J + 1):
            pairs.add((j, case.beta, p.J))
    return sorted(pairs)


def test_c09_test_function_suite(criterion):
    t0 = time.perf_counter()
    failures = []
    pairs = _battery_pairs()
    for j, beta, J in pairs:
        rep = verify_test_fn(j, beta, J)
        if not rep.ok:
            failures.append((j, beta, J, rep.failures))
    dt = time.perf_counter() - t0
    ok = not failures and dt < 120.0
    assert criterion(9, "test-function suite", ok, f"{len(pairs)} (j, beta) pairs, {dt:.1f}s"), failures


def test_c10_determinism(criterion, tmp_path):
    cfg = {"alpha": 0.5, "beta": 0.5, "g": {"kind": "const", "value": 1}, "phi": {"kind": "z"},
           "witness_points": [[0.75, 0.0], [0.9375, 0.0]]}
    path = tmp_path / "op.json"
    path.write_text(json.dumps(cfg))
    outs = [tmp_path / "a.json", tmp_path / "b.json"]
    codes = [main(["--config", str(path), "--json-out", str(o)]) for o in outs]
    ok = codes == [0, 0] and outs[0].read_bytes() == outs[1].read_bytes()
    assert criterion(10, "determinism", ok, f"{outs[0].stat().st_size} bytes")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
