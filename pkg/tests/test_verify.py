# tests/test_verify.py
"""菱形范数下界估计与引理验证套件"""

import math

import numpy as np
import pytest

from modules.bounds import d_tilde
from modules.channels import QuantumChannel, dephasing_channel, identity_channel, random_channel
from modules.core.exceptions import InvalidBudget, InvalidParameter, QDBoundsError, ShapeError
from modules.fock_core import random_density_matrix
from modules.verify import (
    SUITES,
    InputConstraint,
    NormBudget,
    bound_ladder,
    check_cj_truncation,
    check_expcut_lemma,
    check_fock_cutoff,
    check_fock_truncation,
    check_gentle_measurement,
    check_mutual_info_bound,
    check_norm_axioms,
    check_povm_completeness,
    check_trunc_lemma2,
    cj_truncation_sides,
    diamond_lower_bound,
    ecd_lower_bound,
    exp_lower_bound,
    filtering_checks,
    fock_truncation_sides,
    gentle_measurement_sides,
    mutual_info_sides,
    output_distance,
    positivity_witness,
    run_suite,
    run_trials,
    trunc_lemma2_rhs,
)

SMALL = NormBudget(samples=16, iterations=10)


def _pauli_x() -> QuantumChannel:
    return QuantumChannel(2, 2, (np.array([[0, 1], [1, 0]]),))


# ---- 预算与约束 ----

@pytest.mark.parametrize("samples,iterations", [(0, 1), (1.5, 1), (4, -1)])
def test_budget_rejects_invalid(samples, iterations):
    with pytest.raises(InvalidBudget):
        NormBudget(samples, iterations)


def test_budget_to_dict():
    assert NormBudget(3, 0).to_dict() == {"samples": 3, "iterations": 0}


def test_projection_lands_in_feasible_set(rng):
    energy = InputConstraint.energy(0.5, 4)
    expo = InputConstraint.exponential(1.0, 2.0, 4)
    for _ in range(50):
        raw = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        for constraint in (energy, expo):
            psi = constraint.project(raw)
            assert np.linalg.norm(psi) == pytest.approx(1.0)
            assert constraint.value(psi) <= constraint.bound * (1 + 1e-9)


def test_projection_rejects_zero_vector():
    assert InputConstraint.energy(1.0, 3).project(np.zeros((3, 3))) is None


def test_exponential_constraint_needs_Omega_above_one():
    with pytest.raises(InvalidParameter):
        InputConstraint.exponential(1.0, 1.0, 3)


# ---- 估计器 ----

def test_identical_channels_give_zero():
    ch = random_channel(3, 2, 2, seed=4)
    assert ecd_lower_bound(ch, ch, 1.0, budget=SMALL).lower_bound == 0.0


def test_orthogonal_unitaries_reach_cap():
    estimate = diamond_lower_bound(identity_channel(2), _pauli_x(), budget=SMALL)
    assert estimate.lower_bound == pytest.approx(2.0)
    assert estimate.lower_bound <= 2.0


def test_estimate_is_monotone_in_samples():
    ch0, ch1 = random_channel(3, 3, 2, seed=1), random_channel(3, 3, 3, seed=2)
    values = [ecd_lower_bound(ch0, ch1, 0.8, budget=NormBudget(s, 0), seed=11).lower_bound for s in (1, 10, 60)]
    assert values[0] <= values[1] <= values[2] <= 2.0


@pytest.mark.parametrize("pair_seed", [2, 7, 13, 21, 34])
def test_estimate_is_monotone_in_nbar(pair_seed):
    ch0 = random_channel(3, 2, 2, seed=pair_seed)
    ch1 = random_channel(3, 2, 3, seed=pair_seed + 100)
    values = [ecd_lower_bound(ch0, ch1, nbar, budget=NormBudget(24, 12), seed=pair_seed).lower_bound
              for nbar in (0.2, 0.5, 1.0, 1.5)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("seed", [2, 7, 11])
def test_estimate_is_monotone_in_budget(seed):
    ch0, ch1 = random_channel(3, 2, 2, seed=seed), random_channel(3, 2, 3, seed=seed + 1)
    values = [ecd_lower_bound(ch0, ch1, 0.8, budget=NormBudget(s, i), seed=seed).lower_bound
              for s, i in ((16, 5), (32, 20), (64, 50))]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_exponential_estimate_is_monotone_in_Omega():
    ch0, ch1 = random_channel(3, 2, 2, seed=3), random_channel(3, 2, 2, seed=4)
    values = [exp_lower_bound(ch0, ch1, 1.0, Omega, budget=SMALL, seed=9).lower_bound for Omega in (1.5, 3.0, 6.0)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("nbar", [1.0, 1.5])
def test_identity_against_dephasing_reaches_one(nbar):
    estimate = ecd_lower_bound(identity_channel(2), dephasing_channel(2), nbar, budget=SMALL)
    assert 0.95 <= estimate.lower_bound <= 2.0


def test_vacuum_only_exponential_constraint():
    ch0, ch1 = random_channel(3, 2, 2, seed=5), random_channel(3, 2, 3, seed=6)
    vacuum = np.zeros((3, 3), dtype=complex)
    vacuum[0, 0] = 1.0
    direct = output_distance(ch0, ch1, vacuum)
    estimate = exp_lower_bound(ch0, ch1, 20.0, 1.0 + 1e-6, budget=SMALL, seed=1)
    assert estimate.lower_bound == pytest.approx(direct, rel=0.05)


def test_bound_ladder_stops_at_queried_bound():
    assert bound_ladder(InputConstraint.energy(1.0, 3)) == [0.125, 0.25, 0.5, 1.0]
    assert bound_ladder(InputConstraint.energy(0.0, 3)) == []
    assert bound_ladder(InputConstraint.unconstrained(3)) == [None]


def test_exponential_inputs_respect_energy_limit():
    ch0, ch1 = random_channel(4, 2, 2, seed=5), random_channel(4, 2, 3, seed=6)
    omega, Omega = 1.0, 2.0
    estimate = exp_lower_bound(ch0, ch1, omega, Omega, budget=SMALL, seed=3)
    energy = InputConstraint.energy(math.log(Omega) / omega, 4)
    assert energy.value(estimate.coefficients) <= energy.bound + 1e-9
    assert estimate.to_dict()["constraint"] == "exponential"


def test_estimator_rejects_mismatched_pair():
    with pytest.raises(ShapeError):
        ecd_lower_bound(random_channel(2, 2, 2, seed=1), random_channel(3, 2, 2, seed=1), 1.0)


def test_estimator_is_deterministic():
    ch0, ch1 = random_channel(3, 2, 2, seed=8), random_channel(3, 2, 2, seed=9)
    a = ecd_lower_bound(ch0, ch1, 1.0, budget=SMALL, seed=5)
    b = ecd_lower_bound(ch0, ch1, 1.0, budget=SMALL, seed=5)
    assert a.to_dict() == b.to_dict()


# ---- 单实例两侧 ----

def test_gentle_measurement_trivial_effects(rng):
    rho = random_density_matrix(3, rng)
    lhs, rhs = gentle_measurement_sides(rho, np.eye(3))
    assert lhs == pytest.approx(0.0, abs=1e-12)
    assert rhs == pytest.approx(0.0, abs=1e-7)
    assert gentle_measurement_sides(rho, np.zeros((3, 3))) is None


def test_fock_truncation_sides_edge_cases(rng):
    rho = random_density_matrix(12, rng)
    lhs, rhs = fock_truncation_sides(rho, (4, 3), 4)
    assert lhs == pytest.approx(0.0, abs=1e-12)
    assert rhs == 0.0
    excited = np.zeros((4, 4))
    excited[3, 3] = 1.0
    assert fock_truncation_sides(np.kron(excited, np.eye(3) / 3), (4, 3), 2) is None


def test_cj_truncation_sides_identity():
    lhs, rhs, tail = cj_truncation_sides(identity_channel(30), 1.0, 5)
    assert lhs <= rhs + tail


def test_filtering_checks(rng):
    omega, Omega = 0.7, 2.5
    psi = InputConstraint.exponential(omega, Omega, 5).project(rng.standard_normal((5, 5))).T
    checks = filtering_checks(psi, omega)
    assert checks["residual"] < 1e-10
    assert checks["operator_norm2"] <= checks["hilbert_schmidt2"] + 1e-12
    assert checks["hilbert_schmidt2"] <= d_tilde(omega, Omega) + 1e-9


def test_mutual_info_of_dephasing():
    info, varsigma, min_pt = mutual_info_sides(dephasing_channel(3), 1.0)
    assert info <= varsigma + 1e-9
    assert min_pt >= -1e-12


def test_positivity_witness_detects_difference():
    assert positivity_witness(identity_channel(3), dephasing_channel(3), 1.0) > 1e-6


def test_trunc_lemma2_rhs_for_equal_channels():
    ch = random_channel(3, 2, 2, seed=3)
    assert trunc_lemma2_rhs(ch, ch, 1.0, 2) == pytest.approx(4.0 * math.sqrt(0.5), abs=1e-12)


# ---- 检查与套件 ----

@pytest.mark.parametrize("check", [
    check_gentle_measurement,
    check_fock_truncation,
    check_fock_cutoff,
    check_cj_truncation,
    check_mutual_info_bound,
    check_norm_axioms,
    check_povm_completeness,
])
def test_checks_pass(check):
    report = check(trials=10, seed=1)
    assert report.passed
    assert report.trials == 10


@pytest.mark.parametrize("check", [check_trunc_lemma2, check_expcut_lemma])
def test_estimator_checks_pass(check):
    assert check(trials=6, seed=1, budget=SMALL).passed


def test_checks_do_not_depend_on_workers():
    a = check_gentle_measurement(trials=20, seed=4, workers=1)
    b = check_gentle_measurement(trials=20, seed=4, workers=3)
    assert a.worst_slack == b.worst_slack
    assert a.worst_params == b.worst_params


def test_run_suite_single_and_all():
    reports = run_suite("gentle", trials=5)
    assert [r.lemma for r in reports] == ["gentle"]
    reports = run_suite("all", trials=3, budget=NormBudget(8, 4))
    assert len(reports) == len(SUITES)
    assert all(r.passed for r in reports)


@pytest.mark.slow
def test_full_suite_at_default_trials():
    reports = run_suite("all")
    assert len(reports) == len(SUITES)
    for report in reports:
        assert report.passed, report.to_dict()
        if report.threshold is None:
            assert report.worst_slack >= -1e-9


def test_run_suite_rejects_unknown_name():
    with pytest.raises(InvalidParameter):
        run_suite("lemma99")


# ---- 报告 ----

def test_all_skipped_report_serializes():
    report = run_trials("empty", 4, 1, lambda rng, t: None)
    assert report.skipped == 4
    assert report.passed
    assert report.to_dict()["worst_slack"] is None


def test_negative_slack_is_counterexample():
    report = run_trials("broken", 3, 1, lambda rng, t: (-0.5 if t == 1 else 0.1, {"t": t}))
    assert not report.passed
    assert report.worst_params == {"trial": 1, "t": 1}
    assert report.to_dict()["passed"] is False


def test_failing_trial_raises():
    def trial(rng, t):
        raise InvalidParameter("bad", "x", t)

    with pytest.raises(QDBoundsError):
        run_trials("raising", 2, 1, trial)
