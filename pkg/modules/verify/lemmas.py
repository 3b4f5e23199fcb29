# modules/verify/lemmas.py
"""
各引理的桌面规模穷举验证

每个 *_sides 函数对单个实例给出不等式两侧，check_* 在随机实例上汇总余量。
较难的一侧总是用下界估计，因此失败即为真实反例。
"""

import logging
import math
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import unitary_group

from ..bounds.theorem_two import d_tilde, gibbs_entropy_nats
from ..channels.channel import QuantumChannel, apply_extended, apply_extended_second, random_channel
from ..channels.choi import modified_choi, truncate_input_side, truncated_choi
from ..channels.measure_prepare import (
    MeasurePrepare,
    build_measure_prepare,
    measure_prepare_from_povm,
    random_povm,
    separable_choi,
)
from ..core.constants import (
    CJ_MIN_EXTRA_LEVELS,
    CJ_OMEGAS,
    DEFAULT_SEED,
    DEFAULT_TOLERANCES,
    MAX_VERIFY_DIM,
    Tolerances,
)
from ..fock_core.operators import (
    fock_cutoff_gap,
    mutual_information,
    partial_trace,
    partial_transpose,
    random_density_matrix,
    trace_norm,
)
from ..fock_core.special_states import TwoModeSqueezedState, maximally_entangled
from .estimators import (
    InputConstraint,
    NormBudget,
    ecd_lower_bound,
    exp_lower_bound,
    output_distance,
    random_coefficients,
)
from .report import LemmaReport, run_trials

logger = logging.getLogger(__name__)

# 互信息界的额外容差（比特）
MUTUAL_INFO_SLACK = 1e-6
# 条件概率低于此值时截断后的归一化无意义
VACUOUS_MASS = 1e-12


def _seed_from(rng: np.random.Generator) -> int:
    return int(rng.integers(2 ** 31))


def _random_pair(rng: np.random.Generator, din: int, dout: int) -> Tuple[QuantumChannel, QuantumChannel]:
    kraus = max(2, math.ceil(din / dout))
    return (random_channel(din, dout, kraus, _seed_from(rng)),
            random_channel(din, dout, kraus + int(rng.integers(0, 2)), _seed_from(rng)))


def _random_effect(dim: int, rng: np.random.Generator) -> np.ndarray:
    u = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.eye(1, dtype=complex)
    return u @ np.diag(rng.uniform(0.0, 1.0, dim)) @ u.conj().T


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    lam, v = np.linalg.eigh((m + m.conj().T) / 2)
    return v @ np.diag(np.sqrt(np.clip(lam, 0.0, None))) @ v.conj().T


# ---- 温和测量 ----

def gentle_measurement_sides(rho: np.ndarray, effect: np.ndarray) -> Optional[Tuple[float, float]]:
    """½‖ρ − √M ρ √M / Tr(Mρ)‖₁ 与 √(1 − Tr(Mρ))"""
    p = float(np.real(np.trace(effect @ rho)))
    if p <= VACUOUS_MASS:
        return None
    root = _psd_sqrt(effect)
    lhs = 0.5 * trace_norm(rho - root @ rho @ root / p)
    return lhs, math.sqrt(max(1.0 - p, 0.0))


def check_gentle_measurement(trials: int = 200, dims: int = 4, seed: int = DEFAULT_SEED,
                             tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    def trial(rng: np.random.Generator, index: int):
        rank = int(rng.integers(1, dims + 1))
        rho = random_density_matrix(dims, rng, rank)
        sides = gentle_measurement_sides(rho, _random_effect(dims, rng))
        if sides is None:
            return None
        lhs, rhs = sides
        return rhs - lhs, {"dim": dims, "rank": rank, "lhs": lhs, "rhs": rhs}

    return run_trials("gentle", trials, seed, trial, tolerances, workers)


# ---- Fock 截断 ----

def fock_truncation_sides(rho: np.ndarray, dims: Sequence[int], d: int) -> Optional[Tuple[float, float]]:
    """
    ½‖ρ − ρ_TN‖₁ 与 √((⟨n̂_A⟩_ρ − ⟨n̂_A⟩_{ρ_T})/d)

    ρ_T = (Π_d⊗I)ρ(Π_d⊗I) 不归一化，ρ_TN 按 Tr(Π_d ρ_A) 归一化；该迹为 0 时返回 None。
    """
    dims = tuple(int(x) for x in dims)
    rho_a = partial_trace(rho, dims, keep=0).entries
    populations = np.real(np.diag(rho_a))
    kept = float(populations[:d].sum())
    if kept <= VACUOUS_MASS:
        return None
    truncated = truncate_input_side(rho, dims, d)
    n = np.arange(dims[0])
    excess = float(np.dot(n, populations) - np.dot(n[:d], populations[:d]))
    lhs = 0.5 * trace_norm(rho - truncated / kept)
    return lhs, math.sqrt(max(excess, 0.0) / d)


def check_fock_truncation(trials: int = 200, dims: Sequence[int] = (4, 3), seed: int = DEFAULT_SEED,
                          tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    dims = tuple(int(x) for x in dims)

    def trial(rng: np.random.Generator, index: int):
        d = int(rng.integers(1, dims[0]))
        rank = int(rng.integers(1, dims[0] * dims[1] + 1))
        rho = random_density_matrix(dims[0] * dims[1], rng, rank)
        sides = fock_truncation_sides(rho, dims, d)
        if sides is None:
            return None
        lhs, rhs = sides
        return rhs - lhs, {"dims": list(dims), "d": d, "rank": rank, "lhs": lhs, "rhs": rhs}

    return run_trials("fock_truncation", trials, seed, trial, tolerances, workers)


def check_fock_cutoff(trials: int = 200, dims: Sequence[int] = (4, 3), seed: int = DEFAULT_SEED,
                      tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    """Tr(Π_d ρ_A) ≥ 1 − (⟨n̂⟩_ρ − ⟨n̂⟩_{ρ_T})/d"""
    dims = tuple(int(x) for x in dims)

    def trial(rng: np.random.Generator, index: int):
        d = int(rng.integers(1, dims[0] + 1))
        rho = random_density_matrix(dims[0] * dims[1], rng, int(rng.integers(1, dims[0] * dims[1] + 1)))
        return fock_cutoff_gap(rho, d, dims), {"dims": list(dims), "d": d}

    return run_trials("fock_cutoff", trials, seed, trial, tolerances, workers)


# ---- CJ 截断 ----

def working_truncation(d: int, omega: float) -> int:
    """D = d + max(20, ⌈10/ω⌉)"""
    return int(d) + max(CJ_MIN_EXTRA_LEVELS, math.ceil(10.0 / omega))


def cj_truncation_sides(ch: QuantumChannel, omega: float, d: int) -> Tuple[float, float, float]:
    """
    ‖J − J_d‖₁、2√(e^{−ωd}) 与工作截断尾项 e^{−ωD}

    J 在 D = ch.din 能级上构造，J_d 为其输入侧 d 能级截断。
    """
    dim = ch.din
    choi = modified_choi(ch, omega, dim).state.matrix
    lhs = trace_norm(choi - truncate_input_side(choi, (dim, ch.dout), d))
    return lhs, 2.0 * math.exp(-omega * d / 2.0), math.exp(-omega * dim)


def check_cj_truncation(trials: int = 100, seed: int = DEFAULT_SEED, max_dim: int = MAX_VERIFY_DIM,
                        tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    def trial(rng: np.random.Generator, index: int):
        omega = CJ_OMEGAS[index % len(CJ_OMEGAS)]
        d = int(rng.integers(1, max_dim + 1))
        dout = int(rng.integers(1, max_dim + 1))
        big_d = working_truncation(d, omega)
        kraus = math.ceil(big_d / dout) + int(rng.integers(0, 2))
        ch = random_channel(big_d, dout, kraus, _seed_from(rng))
        lhs, rhs, tail = cj_truncation_sides(ch, omega, d)
        return rhs + tail - lhs, {"omega": omega, "d": d, "D": big_d, "dout": dout, "lhs": lhs, "rhs": rhs}

    return run_trials("cj_truncation", trials, seed, trial, tolerances, workers)


# ---- 截断版 Choi 距离引理 ----

def trunc_lemma2_rhs(ch0: QuantumChannel, ch1: QuantumChannel, nbar: float, d: int) -> float:
    """d‖J_T(Λ₀) − J_T(Λ₁)‖₁ + 4√(n̄/d)"""
    diff = truncated_choi(ch0, d).state.matrix - truncated_choi(ch1, d).state.matrix
    return d * trace_norm(diff) + 4.0 * math.sqrt(nbar / d)


def trunc_lemma2_sides(ch0: QuantumChannel, ch1: QuantumChannel, nbar: float,
                       budget: Optional[NormBudget] = None, seed: int = DEFAULT_SEED) -> Tuple[float, Dict[int, float]]:
    """能量约束范数下界与各截断维数 d 上的右侧"""
    estimate = ecd_lower_bound(ch0, ch1, nbar, budget=budget, seed=seed).lower_bound
    return estimate, {d: trunc_lemma2_rhs(ch0, ch1, nbar, d) for d in range(1, ch0.din + 1)}


def check_trunc_lemma2(trials: int = 100, seed: int = DEFAULT_SEED, budget: Optional[NormBudget] = None,
                       tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    def trial(rng: np.random.Generator, index: int):
        din, dout = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        ch0, ch1 = _random_pair(rng, din, dout)
        nbar = float(rng.uniform(0.05, din - 1))
        estimate, rhs = trunc_lemma2_sides(ch0, ch1, nbar, budget, _seed_from(rng))
        d_worst = min(rhs, key=rhs.get)
        return rhs[d_worst] - estimate, {"din": din, "dout": dout, "nbar": nbar, "d": d_worst,
                                         "estimate": estimate, "rhs": rhs[d_worst]}

    return run_trials("trunc_lemma2", trials, seed, trial, tolerances, workers)


# ---- 指数截断引理 ----

def expcut_rhs(ch0: QuantumChannel, ch1: QuantumChannel, omega: float, Omega: float) -> float:
    """d̃‖J(Λ₀) − J(Λ₁)‖₁，d̃ = Ω e^ω/(e^ω − 1)"""
    dim = ch0.din
    diff = modified_choi(ch0, omega, dim).state.matrix - modified_choi(ch1, omega, dim).state.matrix
    return d_tilde(omega, Omega) * trace_norm(diff)


def filter_operator(psi: np.ndarray, omega: float) -> np.ndarray:
    """
    |ψ⟩ = (C⊗I)|φ⟩ 的滤波算符，C_ij = ψ_ij √(e^{ωj}/(1 − e^{−ω}))

    ψ 的列指标为信道输入能级。
    """
    psi = np.asarray(psi, dtype=complex)
    j = np.arange(psi.shape[1])
    return psi * np.sqrt(np.exp(omega * j) / -np.expm1(-omega))[None, :]


def filtering_checks(psi: np.ndarray, omega: float) -> Dict[str, float]:
    """重构残差、‖C‖∞² 与 ‖C‖₂²"""
    c = filter_operator(psi, omega)
    reference = TwoModeSqueezedState(omega, psi.shape[1]).coefficients()
    residual = float(np.max(np.abs(c @ reference - psi)))
    return {
        "residual": residual,
        "operator_norm2": float(np.linalg.norm(c, 2) ** 2),
        "hilbert_schmidt2": float(np.real(np.trace(c.conj().T @ c))),
    }


def check_expcut_lemma(trials: int = 100, seed: int = DEFAULT_SEED, budget: Optional[NormBudget] = None,
                       tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    def trial(rng: np.random.Generator, index: int):
        din, dout = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        ch0, ch1 = _random_pair(rng, din, dout)
        omega = float(rng.uniform(0.3, 2.0))
        Omega = 1.0 + float(rng.uniform(0.1, 3.0))
        estimate = exp_lower_bound(ch0, ch1, omega, Omega, budget=budget, seed=_seed_from(rng)).lower_bound
        rhs = expcut_rhs(ch0, ch1, omega, Omega)

        constraint = InputConstraint.exponential(omega, Omega, din)
        psi = constraint.project(random_coefficients(din, din, rng)).T
        checks = filtering_checks(psi, omega)
        slack = min(rhs - estimate,
                    d_tilde(omega, Omega) - checks["hilbert_schmidt2"],
                    checks["hilbert_schmidt2"] - checks["operator_norm2"])
        if checks["residual"] > tolerances.identity:
            slack = min(slack, tolerances.identity - checks["residual"])
        return slack, {"din": din, "dout": dout, "omega": omega, "Omega": Omega,
                       "estimate": estimate, "rhs": rhs, **checks}

    return run_trials("expcut", trials, seed, trial, tolerances, workers)


# ---- 互信息界 ----

def mutual_info_sides(ch: QuantumChannel, omega: float) -> Tuple[float, float, float]:
    """
    归一化修正 Choi 态的 I(A:B)（比特）、ς（比特）与部分转置最小本征值
    """
    choi = modified_choi(ch, omega, ch.din).state.matrix
    choi = choi / np.real(np.trace(choi))
    dims = (ch.din, ch.dout)
    info = mutual_information(choi, dims)
    _, s = gibbs_entropy_nats(omega)
    min_pt = float(np.linalg.eigvalsh(partial_transpose(choi, dims, 1).entries)[0])
    return info, s / math.log(2.0), min_pt


def random_measure_prepare(rng: np.random.Generator, din: int, dout: int, outcomes: int) -> MeasurePrepare:
    povm = random_povm(din, outcomes, rng)
    states = [random_density_matrix(dout, rng) for _ in range(outcomes)]
    return measure_prepare_from_povm(povm, states)


def check_mutual_info_bound(trials: int = 100, seed: int = DEFAULT_SEED, omega: float = 1.0,
                            tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    def trial(rng: np.random.Generator, index: int):
        din, dout = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        outcomes = int(rng.integers(1, 5))
        ch = random_measure_prepare(rng, din, dout, outcomes).to_channel()
        info, varsigma, min_pt = mutual_info_sides(ch, omega)
        slack = min(varsigma + MUTUAL_INFO_SLACK - info, min_pt + tolerances.eigen_clip)
        return slack, {"din": din, "dout": dout, "outcomes": outcomes, "omega": omega,
                       "mutual_information": info, "varsigma": varsigma, "min_pt_eigenvalue": min_pt}

    return run_trials("mutual_info", trials, seed, trial, tolerances, workers)


# ---- 范数公理 ----

def positivity_witness(ch0: QuantumChannel, ch1: QuantumChannel, nbar: float) -> float:
    """
    Λ₀ ≠ Λ₁ 时的可行见证

    先试真空积态；输出为零时改用最大纠缠态向真空混合到能量边界。
    """
    constraint = InputConstraint.energy(nbar, ch0.din)
    vacuum = np.zeros((ch0.din, ch0.din), dtype=complex)
    vacuum[0, 0] = 1.0
    value = output_distance(ch0, ch1, vacuum)
    if value > DEFAULT_TOLERANCES.identity:
        return value
    entangled = constraint.project(np.eye(ch0.din, dtype=complex))
    return output_distance(ch0, ch1, entangled)


def _difference_output(ch_plus: QuantumChannel, ch_minus: QuantumChannel, psi: np.ndarray) -> np.ndarray:
    return apply_extended(ch_plus, psi) - apply_extended(ch_minus, psi)


def check_norm_axioms(trials: int = 200, seed: int = DEFAULT_SEED,
                      tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    """
    固定输入上的齐次性与三角不等式，以及 Δ ≠ 0 时的正定性见证

    Δ₀ = Λ_a − Λ_b，Δ₁ = Λ_b − Λ_c，Δ₀ + Δ₁ = Λ_a − Λ_c。
    """
    def trial(rng: np.random.Generator, index: int):
        din, dout = int(rng.integers(2, 5)), int(rng.integers(2, 5))
        ch_a, ch_b = _random_pair(rng, din, dout)
        ch_c = random_channel(din, dout, max(2, math.ceil(din / dout)), _seed_from(rng))
        nbar = float(rng.uniform(0.1, din - 1))
        c = -1.0 if index == 0 else float(rng.uniform(-3.0, 3.0))
        psi = InputConstraint.energy(nbar, din).project(random_coefficients(din, din, rng))

        delta0 = _difference_output(ch_a, ch_b, psi)
        delta1 = _difference_output(ch_b, ch_c, psi)
        norm0, norm1 = trace_norm(delta0), trace_norm(delta1)
        homogeneity = abs(trace_norm(c * delta0) - abs(c) * norm0)
        triangle = norm0 + norm1 - trace_norm(delta0 + delta1)
        witness = positivity_witness(ch_a, ch_b, nbar)

        slack = min(tolerances.identity - homogeneity, triangle + tolerances.identity)
        if witness <= tolerances.identity:
            slack = min(slack, witness - tolerances.identity)
        return slack, {"din": din, "dout": dout, "nbar": nbar, "c": c, "homogeneity_error": homogeneity,
                       "triangle_gap": triangle, "witness": witness}

    return run_trials("norm_axioms", trials, seed, trial, tolerances, workers)


# ---- POVM 完备性与测量-制备 Choi 恒等式 ----

def povm_identity_residuals(ch: QuantumChannel, omega: float, frag_dims: Sequence[int], j: int,
                            conditioning: Dict[int, Sequence[np.ndarray]],
                            reference: str = "squeezed") -> Tuple[float, float]:
    """
    ‖Σ_z M_z − I‖ 与 ‖J(E_j) − Σ_z p(z) ρ_A^z ⊗ ρ_B^z‖ 的最大元素
    """
    mp = build_measure_prepare(ch, omega, frag_dims, j, conditioning, reference)
    completeness = mp.completeness_residual()
    channel = mp.to_channel()
    if reference == "squeezed":
        choi = modified_choi(channel, omega, ch.din).state.matrix
    else:
        choi = apply_extended_second(channel, maximally_entangled(ch.din))
    identity = float(np.max(np.abs(choi - separable_choi(mp))))
    return completeness, identity


def check_povm_completeness(trials: int = 100, seed: int = DEFAULT_SEED,
                            tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1) -> LemmaReport:
    def trial(rng: np.random.Generator, index: int):
        din = int(rng.integers(2, 4))
        frag_dims = (int(rng.integers(2, 4)), int(rng.integers(2, 4)))
        dout = frag_dims[0] * frag_dims[1]
        ch = random_channel(din, dout, int(rng.integers(1, 3)), _seed_from(rng))
        omega = float(rng.uniform(0.5, 2.0))
        povm = random_povm(frag_dims[1], int(rng.integers(1, 4)), rng)
        reference = "squeezed" if index % 2 == 0 else "maximally_entangled"
        completeness, identity = povm_identity_residuals(ch, omega, frag_dims, 1, {2: povm}, reference)
        return tolerances.identity - max(completeness, identity), {
            "din": din, "frag_dims": list(frag_dims), "omega": omega, "reference": reference,
            "completeness_residual": completeness, "identity_residual": identity}

    return run_trials("povm", trials, seed, trial, tolerances, workers, threshold=0.0)
