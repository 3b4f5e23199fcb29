# tests/test_fock_core.py
"""截断 Fock 空间线性代数"""

import math

import numpy as np
import pytest

from modules.core.exceptions import InvalidOperator, InvalidParameter, NotAState, ShapeError
from modules.fock_core import (
    FockOperator,
    FockState,
    TwoModeSqueezedState,
    exp_number_operator,
    expectation,
    fock_cutoff_gap,
    gibbs_state,
    is_state,
    kron,
    maximally_entangled,
    mutual_information,
    number_operator,
    partial_trace,
    partial_transpose,
    projector,
    random_density_matrix,
    random_hermitian,
    random_pure_state,
    trace_norm,
    two_mode_squeezed,
    von_neumann_entropy,
)


# ---- trace_norm ----

def test_trace_norm_identity():
    assert trace_norm(np.eye(2)) == pytest.approx(2.0)


def test_trace_norm_signed_diagonal():
    assert trace_norm(np.diag([1.0, -1.0])) == pytest.approx(2.0)


def test_trace_norm_matches_eigen_oracle():
    h = random_hermitian(4, np.random.default_rng(7))
    oracle = np.sum(np.abs(np.linalg.eigvalsh(h)))
    assert trace_norm(h) == pytest.approx(oracle, abs=1e-10)


def test_trace_norm_non_hermitian_uses_singular_values(rng):
    m = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    assert trace_norm(m) == pytest.approx(np.sum(np.linalg.svd(m, compute_uv=False)), abs=1e-10)


def test_trace_norm_rejects_non_finite():
    with pytest.raises(InvalidOperator):
        trace_norm(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_trace_norm_axioms_on_random_pairs():
    rng = np.random.default_rng(11)
    for _ in range(100):
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        y = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        c = complex(rng.standard_normal(), rng.standard_normal())
        assert trace_norm(x) >= 0.0
        assert trace_norm(c * x) == pytest.approx(abs(c) * trace_norm(x), rel=1e-10)
        assert trace_norm(x) + trace_norm(y) - trace_norm(x + y) >= -1e-10


def test_trace_norm_contracts_under_partial_trace():
    rng = np.random.default_rng(3)
    for _ in range(50):
        h = random_hermitian(6, rng)
        assert trace_norm(partial_trace(h, (2, 3), keep=0)) <= trace_norm(h) + 1e-10


# ---- partial_trace ----

def test_partial_trace_product_state(rng):
    sigma = random_density_matrix(2, rng)
    tau = 0.5 * random_density_matrix(3, rng)
    reduced = partial_trace(np.kron(sigma, tau), (2, 3), keep=0)
    np.testing.assert_allclose(reduced.entries, sigma * np.trace(tau), atol=1e-12)


def test_partial_trace_maximally_entangled():
    ket = maximally_entangled(2).reshape(-1)
    reduced = partial_trace(np.outer(ket, ket.conj()), (2, 2), keep=0)
    np.testing.assert_allclose(reduced.entries, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_matches_index_contraction(rng):
    rho = random_density_matrix(12, rng)
    tensor = rho.reshape(3, 4, 3, 4)
    oracle_a = np.array([[sum(tensor[i, k, j, k] for k in range(4)) for j in range(3)] for i in range(3)])
    oracle_b = np.array([[sum(tensor[k, i, k, j] for k in range(3)) for j in range(4)] for i in range(4)])
    rho_a = partial_trace(rho, (3, 4), keep=0)
    rho_b = partial_trace(rho, (3, 4), keep=1)
    np.testing.assert_allclose(rho_a.entries, oracle_a, atol=1e-12)
    np.testing.assert_allclose(rho_b.entries, oracle_b, atol=1e-12)
    assert rho_a.trace().real == pytest.approx(rho_b.trace().real, abs=1e-12)


def test_partial_trace_dimension_mismatch():
    with pytest.raises(ShapeError):
        partial_trace(np.eye(6), (2, 2), keep=0)


def test_partial_trace_uses_operator_dims():
    op = kron(np.diag([1.0, 0.0]), np.eye(3) / 3)
    assert op.dims == (2, 3)
    np.testing.assert_allclose(partial_trace(op, keep=1).entries, np.eye(3) / 3, atol=1e-12)


def test_partial_transpose_is_involution(rng):
    rho = random_density_matrix(6, rng)
    twice = partial_transpose(partial_transpose(rho, (2, 3)), (2, 3))
    np.testing.assert_allclose(twice.entries, rho, atol=1e-14)


# ---- 算符与态 ----

def test_fock_operator_rejects_bad_dims():
    with pytest.raises(ShapeError):
        FockOperator(np.eye(4), (2, 3))


def test_fock_operator_is_immutable():
    op = FockOperator(np.eye(2))
    with pytest.raises(ValueError):
        op.entries[0, 0] = 5.0


def test_fock_state_rejects_negative_eigenvalue():
    with pytest.raises(NotAState):
        FockState.from_matrix(np.diag([1.2, -0.2]))


def test_number_operator_and_projector():
    np.testing.assert_allclose(np.diag(number_operator(4).entries).real, [0, 1, 2, 3])
    np.testing.assert_allclose(np.diag(projector(2, 4).entries).real, [1, 1, 0, 0])
    with pytest.raises(ShapeError):
        projector(5, 4)


def test_is_state(rng):
    assert is_state(np.eye(3) / 3)
    assert is_state(random_density_matrix(4, rng))
    assert not is_state(np.diag([1.2, -0.2]))
    assert not is_state(np.eye(2))
    assert not is_state(np.array([[0.5, 0.5], [-0.5, 0.5]]))


def test_expectation_of_number_and_exponential_operators():
    rho = np.diag([0.5, 0.3, 0.2])
    assert expectation(rho, number_operator(3)) == pytest.approx(0.7, abs=1e-15)
    omega = 0.4
    expected = 0.5 + 0.3 * math.exp(omega) + 0.2 * math.exp(2 * omega)
    assert expectation(rho, exp_number_operator(omega, 3)) == pytest.approx(expected, rel=1e-14)
    np.testing.assert_allclose(exp_number_operator(0.0, 3).entries, np.eye(3))


def test_exponential_moment_of_gibbs_state():
    # 精确尾部的截断 Gibbs 态：Tr(τ e^{ω'n̂}) = (1−e^{−ω})·(1−r^D)/(1−r)，r = e^{ω'−ω}
    omega, omega_prime, dim = 1.0, 0.3, 40
    tau = gibbs_state(omega, dim)
    ratio = math.exp(omega_prime - omega)
    expected = (1 - math.exp(-omega)) * (1 - ratio ** dim) / (1 - ratio)
    assert expectation(tau, exp_number_operator(omega_prime, dim)) == pytest.approx(expected, rel=1e-12)


# ---- gibbs_state / two_mode_squeezed ----

def test_gibbs_exact_tail_ln2():
    state = gibbs_state(math.log(2.0), 2)
    np.testing.assert_allclose(np.diag(state.matrix).real, [0.5, 0.25], atol=1e-15)
    assert state.trace() == pytest.approx(0.75)
    assert not state.normalized


def test_gibbs_zero_temperature_limit():
    state = gibbs_state(50.0, 3)
    expected = np.diag([1.0, 0.0, 0.0])
    assert np.max(np.abs(state.matrix - expected)) < 1e-20


def test_gibbs_renormalized_mean_photon():
    state = gibbs_state(1.0, 60, "renormalized")
    mean = np.real(np.trace(state.matrix @ number_operator(60).entries))
    assert state.trace() == pytest.approx(1.0, abs=1e-14)
    assert mean == pytest.approx(1.0 / (math.e - 1.0), abs=1e-10)


@pytest.mark.parametrize("omega", [0.0, -1.0])
def test_gibbs_rejects_non_positive_omega(omega):
    with pytest.raises(InvalidParameter):
        gibbs_state(omega, 4)


def test_two_mode_squeezed_trace():
    assert two_mode_squeezed(1.0, 3).trace() == pytest.approx(1.0 - math.exp(-3.0), abs=1e-12)
    assert two_mode_squeezed(1.0, 3).trace() == pytest.approx(0.950213, abs=1e-6)


@pytest.mark.parametrize("omega", [0.2, 1.0, 3.0])
@pytest.mark.parametrize("dim", [2, 8, 32])
def test_two_mode_squeezed_reduces_to_gibbs(omega, dim):
    state = two_mode_squeezed(omega, dim)
    gibbs = gibbs_state(omega, dim).matrix
    for keep in (0, 1):
        np.testing.assert_allclose(partial_trace(state, keep=keep).entries, gibbs, atol=1e-12)
    assert state.trace() == pytest.approx(TwoModeSqueezedState(omega, dim).squared_norm(), abs=1e-12)


def test_two_mode_squeezed_projection_is_symmetric():
    tms = TwoModeSqueezedState(0.7, 6)
    ket = tms.ket()
    pi = projector(3, 6).entries
    left = np.kron(pi, np.eye(6)) @ ket
    right = np.kron(np.eye(6), pi) @ ket
    np.testing.assert_allclose(left, right, atol=1e-15)


def test_two_mode_squeezed_mean_photon():
    assert TwoModeSqueezedState(1.0, 4).mean_photon == pytest.approx(1.0 / (math.e - 1.0))


# ---- 熵与互信息 ----

def test_entropy_of_pure_state_is_zero(rng):
    ket = random_pure_state(5, rng)
    assert von_neumann_entropy(np.outer(ket, ket.conj())) == pytest.approx(0.0, abs=1e-9)


def test_entropy_of_maximally_mixed_qubit():
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0)


def test_entropy_of_gibbs_matches_thermal_formula():
    n = 1.0 / (math.e - 1.0)
    closed = (n + 1.0) * math.log(n + 1.0) - n * math.log(n)
    state = gibbs_state(1.0, 60, "renormalized")
    assert von_neumann_entropy(state, "nats") == pytest.approx(closed, abs=1e-6)


def test_entropy_residual_decreases_with_dimension():
    omega = 1.0
    n = 1.0 / math.expm1(omega)
    closed = (n + 1.0) * math.log(n + 1.0) - n * math.log(n)
    residuals = [abs(von_neumann_entropy(gibbs_state(omega, dim, "renormalized"), "nats") - closed)
                 for dim in (4, 8, 16, 24)]
    assert all(b < a for a, b in zip(residuals, residuals[1:]))
    for dim, residual in zip((4, 8, 16, 24), residuals):
        assert residual <= math.exp(-omega * dim) * (omega * dim + 3.0)


def test_entropy_rejects_invalid_state():
    with pytest.raises(NotAState):
        von_neumann_entropy(np.diag([1.1, -0.1]))


def test_mutual_information_product_and_entangled(rng):
    product = np.kron(random_density_matrix(2, rng), random_density_matrix(2, rng))
    assert mutual_information(product, (2, 2)) == pytest.approx(0.0, abs=1e-9)
    ket = maximally_entangled(2).reshape(-1)
    assert mutual_information(np.outer(ket, ket.conj()), (2, 2)) == pytest.approx(2.0, abs=1e-9)


def test_mutual_information_classical_table():
    table = np.array([[0.4, 0.1], [0.2, 0.3]])
    rho = np.diag(table.reshape(-1))
    pa, pb = table.sum(axis=1), table.sum(axis=0)
    oracle = sum(table[i, j] * math.log2(table[i, j] / (pa[i] * pb[j])) for i in range(2) for j in range(2))
    assert mutual_information(rho, (2, 2)) == pytest.approx(oracle, abs=1e-9)


# ---- Fock 截断 ----

def test_fock_cutoff_gap_is_non_negative():
    rng = np.random.default_rng(5)
    for _ in range(50):
        rho = random_density_matrix(12, rng)
        for d in (1, 2, 3):
            assert fock_cutoff_gap(rho, d, (4, 3)) >= -1e-12
