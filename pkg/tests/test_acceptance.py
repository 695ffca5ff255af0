"""Acceptance gate: every library guarantee at its stated tolerance.

One pass/fail line prints per criterion (run with ``pytest -s`` to see them
live). The first sweep feeds criteria 1-8; criterion 9 reruns the identical
sweep on a different thread count and compares the serialized bytes.
"""

import math

import pytest

from wasserstein_calculus.acceptance import DISCRETIZATION_BUDGET_S, run_sweep
from wasserstein_calculus.util import canonical_json

ACCEPTANCE_SEED = 0


@pytest.fixture(scope="module")
def sweep():
    report, timings = run_sweep(seed=ACCEPTANCE_SEED, threads=1)
    return report, timings


def _criterion(report, number):
    match = [c for c in report["criteria"] if c["criterion"] == number]
    assert len(match) == 1
    return match[0]


def _line(number, name, ok):
    print(f"ACCEPTANCE {number} {name}: {'PASS' if ok else 'FAIL'}")


def test_criterion_1_discretization_bound(sweep):
    report, timings = sweep
    c = _criterion(report, 1)
    ok = c["ok"] and timings["discretization_bound"] <= DISCRETIZATION_BUDGET_S
    _line(1, "discretization bound 3/n, both bump modes, runtime <= 10s", ok)
    assert c["violations"] == 0
    assert c["measures_per_case"] == 100
    assert set(c["modes"]) == {"smooth_bump", "linear_hat"}
    assert {(r["K"], r["n"]) for r in c["per_n"]} == {
        (K, n) for K in (1, 2) for n in range(K + 1, 65)
    }
    assert timings["discretization_bound"] <= DISCRETIZATION_BUDGET_S


def test_criterion_2_dawson_matches_exact(sweep):
    report, _ = sweep
    c = _criterion(report, 2)
    _line(2, "extrapolated quotient within 1e-5 of exact, order ~1", c["ok"])
    assert c["samples"] == 200
    assert len(c["functions"]) >= 6
    for entry in c["functions"]:
        assert entry["extrapolated_err_max"] <= 1e-5
        if not entry["degenerate"]:
            assert 0.9 <= entry["order"] <= 1.1
    assert c["eps_grid"] == [1e-2, 5e-3, 2.5e-3]


def test_criterion_3_integral_identity(sweep):
    report, _ = sweep
    c = _criterion(report, 3)
    _line(3, "defining-integral residual <= 1e-9 at quadrature order 32", c["ok"])
    assert c["samples"] == 100
    assert c["quad_order"] == 32
    assert c["residual_max"] <= 1e-9


def test_criterion_4_canonical_normalization(sweep):
    report, _ = sweep
    c = _criterion(report, 4)
    _line(4, "derivatives integrate to zero (exact 1e-12, estimated 1e-5)", c["ok"])
    assert c["exact_integral_max"] <= 1e-12
    assert c["estimated_integral_max"] <= 1e-5


def test_criterion_5_antiderivative_soundness(sweep):
    report, _ = sweep
    c = _criterion(report, 5)
    _line(5, "antiderivative differentiates back to the field", c["ok"])
    assert c["eps"] == 1e-3 and c["quad_order"] == 32 and c["K"] == 1.0
    for entry in c["fields"]:
        assert entry["mismatch_max"] <= 1e-5
        assert entry["verdict"] == "derivative"
        assert entry["recovery_err_max"] <= 1e-9


def test_criterion_6_counterexample(sweep):
    report, _ = sweep
    c = _criterion(report, 6)
    _line(6, "symmetry-violating field reproduced and detected", c["ok"])
    inner = c["report"]
    assert inner["phi"] == "sin" and inner["psi"] == "cos"
    assert inner["K"] == pytest.approx(math.pi)
    assert inner["quadrature_vs_closed_max"] <= 1e-10
    assert inner["built_derivative_vs_closed_max"] <= 1e-5
    assert inner["closed_derivative_vs_field_max"] >= 0.1
    assert c["pinned_symmetry_residual"] == pytest.approx(-2.0, abs=1e-10)
    assert inner["verdict"] == "not-a-derivative"
    assert c["ftc_verdict"] == "not-a-derivative"
    assert c["ftc_mismatch_max"] >= c["ftc_mismatch_floor"] >= 0.1


def test_criterion_7_second_derivative_symmetry(sweep):
    report, _ = sweep
    c = _criterion(report, 7)
    _line(7, "second-derivative symmetry residual <= 1e-10", c["ok"])
    assert c["samples"] == 1000
    assert len(c["functions"]) >= 1
    assert c["residual_max"] <= 1e-10


def test_criterion_8_metric_properties(sweep):
    report, _ = sweep
    c = _criterion(report, 8)
    _line(8, "duality bounds below w1 and triangle inequality (1e-12)", c["ok"])
    assert c["samples"] == 1000
    assert c["triangle_excess_max"] <= 1e-12
    assert c["kr_excess_max"] <= 1e-12


def test_criterion_9_determinism(sweep):
    report, _ = sweep
    rerun, _ = run_sweep(seed=ACCEPTANCE_SEED, threads=2)
    identical = canonical_json(report) == canonical_json(rerun)
    _line(9, "sweep reports byte-identical for fixed seed, any thread count", identical)
    assert identical
    assert report["all_ok"] is True
