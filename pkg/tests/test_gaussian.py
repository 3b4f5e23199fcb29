# tests/test_gaussian.py
"""单模高斯态的矩、截断参数与采样证书"""

import math

import numpy as np
import pytest

from modules.core.exceptions import InvalidParameter
from modules.gaussian import (
    GaussianState,
    certify_set,
    cutoff_params,
    exp_moment,
    fock_mean_oracle,
    fock_moment_oracle,
    mean_photon,
    moment_arrays,
    omega_max,
    photon_distribution,
    sample_bounded_energy,
    worst_case_moment,
)

OMEGAS = [0.02, 0.05, 0.1, 0.15, 0.2]


def _state(family, param):
    if family == "coherent":
        return GaussianState(alpha=math.sqrt(param))
    if family == "thermal":
        return GaussianState(m=param)
    return GaussianState(r=param)


# ---- mean_photon ----

def test_mean_photon_simple_cases():
    assert mean_photon(GaussianState()) == 0.0
    assert mean_photon(GaussianState(alpha=1.0)) == pytest.approx(1.0)
    assert mean_photon(GaussianState(r=0.5)) == pytest.approx(math.sinh(0.5) ** 2)
    assert mean_photon(GaussianState(r=0.5)) == pytest.approx(0.27154, abs=1e-5)


@pytest.mark.parametrize("family,param", [("coherent", 1.3), ("thermal", 0.7), ("squeezed", 0.5)])
def test_mean_photon_matches_fock_distribution(family, param):
    assert mean_photon(_state(family, param)) == pytest.approx(fock_mean_oracle(family, param), rel=1e-8)


def test_photon_distribution_is_normalized():
    for family, param in (("coherent", 2.0), ("thermal", 0.5), ("squeezed", 0.6)):
        assert photon_distribution(family, param, 4000).sum() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(InvalidParameter):
        photon_distribution("cat", 1.0, 10)


def test_negative_squeezing_swaps_quadratures():
    g = GaussianState(alpha=complex(0.3, 0.7), m=0.2, r=-0.4)
    assert g.r == pytest.approx(0.4)
    assert g.alpha == complex(0.7, 0.3)
    assert mean_photon(g) == pytest.approx(mean_photon(GaussianState(complex(0.3, 0.7), 0.2, 0.4)))


def test_covariance_of_vacuum_is_identity():
    np.testing.assert_allclose(GaussianState().covariance, np.eye(2))


def test_rejects_negative_thermal_photons():
    with pytest.raises(InvalidParameter):
        GaussianState(m=-0.1)


# ---- exp_moment ----

@pytest.mark.parametrize("omega", [0.01, 0.5, 1.5, 5.0])
def test_vacuum_moment_is_exactly_one(omega):
    assert exp_moment(GaussianState(), omega).moment == 1.0


@pytest.mark.parametrize("family,params", [
    ("coherent", [0.1, 0.5, 1.0, 2.0, 4.0]),
    ("thermal", [0.1, 0.5, 1.0, 2.0, 4.0]),
    ("squeezed", [0.1, 0.3, 0.5, 0.8, 1.0]),
])
def test_closed_form_matches_fock_sums(family, params):
    for param in params:
        for omega in OMEGAS:
            report = exp_moment(_state(family, param), omega)
            assert report.feasible
            assert report.moment == pytest.approx(fock_moment_oracle(family, param, omega), rel=1e-8)


def test_coherent_closed_form():
    omega, a2 = 0.3, 1.7
    expected = math.exp(math.expm1(omega) * a2)
    assert exp_moment(GaussianState(alpha=math.sqrt(a2)), omega).moment == pytest.approx(expected, rel=1e-10)


def test_thermal_closed_form_and_divergence():
    m, omega = 1.0, 0.5
    q = m / (m + 1)
    assert exp_moment(GaussianState(m=m), omega).moment == pytest.approx((1 - q) / (1 - q * math.exp(omega)), rel=1e-10)
    # q e^ω ≥ 1 与 coth(ω/2) ≤ 2m+1 同时成立
    omega = 0.8
    assert q * math.exp(omega) >= 1
    assert 1 / math.tanh(omega / 2) <= 2 * m + 1
    report = exp_moment(GaussianState(m=m), omega)
    assert not report.feasible
    assert report.moment == math.inf
    assert fock_moment_oracle("thermal", m, omega) == math.inf


def test_exp_moment_reports_omega_check():
    report = exp_moment(GaussianState(alpha=1.0), 0.2, Omega=1.1)
    assert report.satisfies_Omega is False
    assert exp_moment(GaussianState(alpha=1.0), 0.2, Omega=2.0).satisfies_Omega is True


def test_exp_moment_rejects_non_positive_omega():
    with pytest.raises(InvalidParameter):
        exp_moment(GaussianState(), 0.0)


def test_moment_is_invariant_under_phase_flip():
    for alpha, m, r in ((complex(0.4, -0.3), 0.2, 0.3), (complex(-0.7, 0.1), 0.0, 0.5), (0.9, 0.4, 0.0)):
        g = GaussianState(alpha, m, r)
        flipped = GaussianState(-g.alpha, m, r)
        mirrored = GaussianState(g.alpha.conjugate(), m, r)
        for omega in (0.05, 0.2):
            assert exp_moment(flipped, omega).moment == exp_moment(g, omega).moment
            assert exp_moment(mirrored, omega).moment == exp_moment(g, omega).moment


def test_thermal_feasibility_boundary_identity():
    # (2m+1) − coth(ω/2) = 2(m+1)(qe^ω − 1)/(e^ω − 1)
    for m in (0.1, 0.5, 1.0, 2.0, 5.0):
        q = m / (m + 1)
        for omega in (0.05, 0.2, 0.5, 0.8, 1.5):
            lhs = 2 * m + 1 - 1 / math.tanh(omega / 2)
            rhs = 2 * (m + 1) * (q * math.exp(omega) - 1) / math.expm1(omega)
            assert lhs == pytest.approx(rhs, abs=1e-12)
            assert exp_moment(GaussianState(m=m), omega).feasible == (q * math.exp(omega) < 1)


@pytest.mark.parametrize("state", [
    GaussianState(alpha=1.0),
    GaussianState(m=1.0),
    GaussianState(r=math.asinh(1.0)),
    GaussianState(complex(0.3, 0.2), 0.2, 0.3),
])
def test_moment_strictly_increasing_in_omega(state):
    assert mean_photon(state) <= 1.0 + 1e-12
    omegas = np.linspace(0.01, 0.95 * omega_max(1.0), 30)
    values = [exp_moment(state, w).moment for w in omegas]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_mixture_moment_is_linear_and_certified():
    omega, Omega = cutoff_params(1.0, 0.5, 4.0), 4.0
    p1, p2 = photon_distribution("coherent", 0.8, 400), photon_distribution("thermal", 0.6, 400)
    m1 = exp_moment(GaussianState(alpha=math.sqrt(0.8)), omega).moment
    m2 = exp_moment(GaussianState(m=0.6), omega).moment
    weights = np.exp(omega * np.arange(400))
    for p in (0.0, 0.25, 0.5, 0.9):
        mixed = float(np.dot(p * p1 + (1 - p) * p2, weights))
        assert mixed == pytest.approx(p * m1 + (1 - p) * m2, rel=1e-8)
        assert mixed <= Omega

    rng = np.random.default_rng(17)
    s = sample_bounded_energy(1.0, 2000, rng)
    moments = moment_arrays(s["a_re"], s["a_im"], s["m"], s["r"], omega)
    assert np.all(moments <= Omega)
    p = rng.uniform(0.0, 1.0, 1000)
    hull = p * moments[:1000] + (1 - p) * moments[1000:]
    assert np.all(hull <= Omega)


def test_moment_arrays_matches_scalar():
    states = [GaussianState(complex(0.4, -0.2), 0.3, 0.2), GaussianState(0.5, 0.0, 0.6)]
    values = moment_arrays([g.alpha.real for g in states], [g.alpha.imag for g in states],
                           [g.m for g in states], [g.r for g in states], 0.1)
    for g, v in zip(states, values):
        assert v == pytest.approx(exp_moment(g, 0.1).moment, rel=1e-12)


# ---- cutoff_params ----

def test_cutoff_params_reference():
    assert cutoff_params(1.0, 0.5, 4.0) == pytest.approx(1 / 7.5, rel=1e-12)


def test_cutoff_params_vanishes_with_epsilon():
    values = [cutoff_params(1.0, eps, 2.0) for eps in (1e-2, 1e-4, 1e-6)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-5


def test_cutoff_params_branch_bound():
    rng = np.random.default_rng(13)
    for _ in range(100):
        nbar = float(rng.uniform(0.0, 5.0))
        eps = float(rng.uniform(0.01, 0.99))
        Omega = (1 + float(rng.uniform(0.01, 5.0))) / (1 - eps)
        omega = cutoff_params(nbar, eps, Omega)
        assert omega <= 2 * eps / (1.5 + 2 * nbar * (2 + nbar)) + 1e-15
        assert omega < 2


def test_cutoff_params_requires_large_Omega():
    with pytest.raises(InvalidParameter):
        cutoff_params(1.0, 0.5, 2.0)


# ---- worst_case_moment / omega_max ----

def test_omega_max_for_unit_energy():
    assert omega_max(1.0) == pytest.approx(0.5 * math.log(2.0), rel=1e-12)
    assert omega_max(0.0) == math.inf


def test_worst_case_dominates_families():
    nbar = 1.0
    for omega in (0.05, 0.15, 0.3):
        worst = worst_case_moment(nbar, omega)
        assert worst >= exp_moment(GaussianState(alpha=1.0), omega).moment * (1 - 1e-9)
        assert worst >= exp_moment(GaussianState(m=1.0), omega).moment * (1 - 1e-9)
        assert worst >= exp_moment(GaussianState(r=math.asinh(1.0)), omega).moment * (1 - 1e-9)


def test_worst_case_increasing_in_omega():
    values = [worst_case_moment(1.0, w) for w in (0.05, 0.1, 0.2, 0.3)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_worst_case_vacuum_and_limit():
    assert worst_case_moment(0.0, 3.0) == 1.0
    with pytest.raises(InvalidParameter):
        worst_case_moment(1.0, omega_max(1.0))


def test_worst_case_bounds_sampled_states():
    rng = np.random.default_rng(3)
    s = sample_bounded_energy(1.0, 5000, rng)
    moments = moment_arrays(s["a_re"], s["a_im"], s["m"], s["r"], 0.2)
    assert np.max(moments) <= worst_case_moment(1.0, 0.2) * (1 + 1e-6)


# ---- 采样证书 ----

def test_sampler_respects_energy():
    s = sample_bounded_energy(1.0, 2000, np.random.default_rng(0))
    energy = s["a_re"] ** 2 + s["a_im"] ** 2 + s["m"] * np.cosh(2 * s["r"]) + np.sinh(s["r"]) ** 2
    assert len(energy) == 2000
    assert np.all(energy <= 1.0)


def test_certificate_has_no_violations():
    report = certify_set(1.0, 0.5, 4.0, 10_000, seed=1)
    assert report.passed
    assert report.violations == 0
    assert report.squeeze_bound_violations == 0
    assert report.omega == pytest.approx(1 / 7.5)
    assert report.worst_moment <= 4.0


def test_certificate_for_vacuum_only():
    report = certify_set(0.0, 0.5, 4.0, 100, seed=1)
    assert report.passed
    assert report.worst_moment == 1.0


def test_certificate_negative_control_is_reported():
    base = certify_set(1.0, 0.5, 4.0, 2000, seed=5)
    doubled = certify_set(1.0, 0.5, 4.0, 2000, seed=5, omega=2 * base.omega)
    assert doubled.omega == pytest.approx(2 * base.omega)
    assert doubled.worst_moment >= base.worst_moment
    assert "violations" in doubled.to_dict()


def test_certificate_is_deterministic_across_workers():
    a = certify_set(1.0, 0.5, 4.0, 5000, seed=9, workers=1)
    b = certify_set(1.0, 0.5, 4.0, 5000, seed=9, workers=3)
    assert a.to_dict() == b.to_dict()
