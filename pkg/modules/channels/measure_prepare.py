# modules/channels/measure_prepare.py
"""
测量-制备信道 E_j(X) = Σ_z Tr(M_z X) ρ_{B_j}^z

由修正 Choi 态对条件碎片做测量，得到条件态 ρ_A^z、ρ_{B_j}^z 与权重 p(z)，
再取 M_z = 𝒩^{−2} p(z) O (ρ_A^z)^T O，O = Σ_i (1/φ_i)|i⟩⟨i|。
O 只在截断空间上构造，无穷维下的无界性在固定维数时不出现。
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import unitary_group

from ..core.constants import IDENTITY_TOL
from ..core.exceptions import FragmentIndexError, InvalidParameter, InvalidPOVM, ShapeError
from ..fock_core.operators import partial_trace
from ..fock_core.special_states import TwoModeSqueezedState, maximally_entangled
from .channel import QuantumChannel, apply_extended_second

logger = logging.getLogger(__name__)

# 条件概率低于此值的结果被丢弃
OUTCOME_CUTOFF = 1e-14


@dataclass(frozen=True, eq=False)
class MeasurePrepare:
    """测量-制备信道的 POVM、制备态与权重"""
    povm: Tuple[np.ndarray, ...]
    states: Tuple[np.ndarray, ...]
    weights: Optional[Tuple[float, ...]] = None
    outcomes: Optional[Tuple[Tuple[int, ...], ...]] = None
    reduced_inputs: Optional[Tuple[np.ndarray, ...]] = None

    def __post_init__(self):
        if len(self.povm) != len(self.states) or not self.povm:
            raise ShapeError("POVM 与制备态数目不一致", expected=len(self.povm), actual=len(self.states))

    @property
    def din(self) -> int:
        return self.povm[0].shape[0]

    @property
    def dout(self) -> int:
        return self.states[0].shape[0]

    def completeness_residual(self) -> float:
        return float(np.max(np.abs(sum(self.povm) - np.eye(self.din))))

    def min_effect_eigenvalue(self) -> float:
        return float(min(np.linalg.eigvalsh((m + m.conj().T) / 2)[0] for m in self.povm))

    def apply(self, x: np.ndarray) -> np.ndarray:
        """E(X) = Σ_z Tr(M_z X) ρ_B^z"""
        return sum(np.trace(m @ x) * s for m, s in zip(self.povm, self.states))

    def to_channel(self) -> QuantumChannel:
        """Kraus 表示：K = √(q_b λ_i) |u_b⟩⟨v_i|"""
        kraus: List[np.ndarray] = []
        for m, s in zip(self.povm, self.states):
            lam, v = np.linalg.eigh((m + m.conj().T) / 2)
            q, u = np.linalg.eigh((s + s.conj().T) / 2)
            for li, vi in zip(lam, v.T):
                if li <= 1e-15:
                    continue
                for qb, ub in zip(q, u.T):
                    if qb <= 1e-15:
                        continue
                    kraus.append(np.sqrt(qb * li) * np.outer(ub, vi.conj()))
        return QuantumChannel(self.din, self.dout, tuple(kraus))


def check_povm(effects: Sequence[np.ndarray], fragment: Optional[int] = None, tol: float = IDENTITY_TOL) -> None:
    """POVM 必须半正定且完备"""
    effects = [np.asarray(e, dtype=complex) for e in effects]
    if not effects:
        raise InvalidPOVM("POVM 不能为空", fragment=fragment)
    dim = effects[0].shape[0]
    for e in effects:
        if e.shape != (dim, dim):
            raise InvalidPOVM("POVM 效应算符维数不一致", fragment=fragment)
        if np.linalg.eigvalsh((e + e.conj().T) / 2)[0] < -tol:
            raise InvalidPOVM("POVM 效应算符不是半正定的", fragment=fragment)
    residual = float(np.max(np.abs(sum(effects) - np.eye(dim))))
    if residual > tol:
        raise InvalidPOVM(f"POVM 不完备，残差 {residual:.3e}", residual=residual, fragment=fragment)


def _embed(effects: Mapping[int, np.ndarray], frag_dims: Sequence[int], a_dim: int) -> np.ndarray:
    """I_A ⊗ (⊗_l N_l)，未测量的碎片取恒等"""
    op = np.eye(a_dim, dtype=complex)
    for idx, d in enumerate(frag_dims, start=1):
        op = np.kron(op, effects.get(idx, np.eye(d, dtype=complex)))
    return op


def build_measure_prepare(ch: QuantumChannel, omega: Optional[float], frag_dims: Sequence[int], j: int,
                          conditioning: Optional[Mapping[int, Sequence[np.ndarray]]] = None,
                          reference: str = "squeezed") -> MeasurePrepare:
    """
    由信道构造测量-制备信道 E_j

    Args:
        ch: 信道 A → B_1…B_N
        omega: 修正 Choi 态的截断参数（reference="squeezed" 时必需）
        frag_dims: 各碎片维数
        j: 目标碎片编号（从 1 开始）
        conditioning: {碎片编号: POVM 效应列表}，不得包含 j
        reference: "squeezed" 使用 |φ⟩；"maximally_entangled" 使用 d 维最大纠缠态
    """
    frag_dims = tuple(int(d) for d in frag_dims)
    n = len(frag_dims)
    if int(np.prod(frag_dims)) != ch.dout:
        raise ShapeError("碎片维数之积与信道输出维数不符", expected=ch.dout, actual=frag_dims)
    if not 1 <= j <= n:
        raise FragmentIndexError(f"碎片编号 {j} 越界", index=j, count=n)
    conditioning = dict(conditioning or {})
    for idx, effects in conditioning.items():
        if not 1 <= idx <= n:
            raise FragmentIndexError(f"条件碎片编号 {idx} 越界", index=idx, count=n)
        if idx == j:
            raise FragmentIndexError("目标碎片不能出现在条件集合中", index=idx, count=n)
        check_povm(effects, fragment=idx)
        if effects[0].shape[0] != frag_dims[idx - 1]:
            raise InvalidPOVM("POVM 维数与碎片维数不符", fragment=idx)

    dim = ch.din
    if reference == "squeezed":
        phi = TwoModeSqueezedState(omega, dim)
        psi = phi.coefficients()
        filt = np.diag(1.0 / phi.phi)
        scale = 1.0 / phi.norm_const ** 2
    elif reference == "maximally_entangled":
        psi = maximally_entangled(dim)
        filt = np.eye(dim)
        scale = float(dim)
    else:
        raise InvalidParameter(f"未知的参考态: {reference}", "reference", reference)

    rho = apply_extended_second(ch, psi)
    full_dims = (dim,) + frag_dims
    keys = sorted(conditioning)
    povm, states, weights, outcomes, inputs = [], [], [], [], []
    for z in itertools.product(*(range(len(conditioning[k])) for k in keys)):
        effects = {k: np.asarray(conditioning[k][zi], dtype=complex) for k, zi in zip(keys, z)}
        sigma = _embed(effects, frag_dims, dim) @ rho
        sigma = partial_trace(sigma, full_dims, keep=(0, j)).entries
        p = float(np.real(np.trace(sigma)))
        if p <= OUTCOME_CUTOFF:
            logger.debug(f"Dropping outcome {z} with probability {p:.3e}")
            continue
        sigma = (sigma + sigma.conj().T) / (2 * p)
        rho_a = partial_trace(sigma, (dim, frag_dims[j - 1]), keep=0).entries
        rho_b = partial_trace(sigma, (dim, frag_dims[j - 1]), keep=1).entries
        povm.append(scale * p * filt @ rho_a.T @ filt)
        states.append(rho_b)
        weights.append(p)
        outcomes.append(tuple(z))
        inputs.append(rho_a)

    return MeasurePrepare(tuple(povm), tuple(states), tuple(weights), tuple(outcomes), tuple(inputs))


def measure_prepare_from_povm(povm: Sequence[np.ndarray], states: Sequence[np.ndarray]) -> MeasurePrepare:
    """由给定 POVM 与制备态直接构造"""
    check_povm(povm)
    return MeasurePrepare(tuple(np.asarray(m, dtype=complex) for m in povm),
                          tuple(np.asarray(s, dtype=complex) for s in states))


def separable_choi(mp: MeasurePrepare) -> np.ndarray:
    """Σ_z p(z) ρ_A^z ⊗ ρ_B^z"""
    if mp.weights is None or mp.reduced_inputs is None:
        raise InvalidParameter("缺少条件态信息", "weights")
    return sum(p * np.kron(a, b) for p, a, b in zip(mp.weights, mp.reduced_inputs, mp.states))


def random_povm(dim: int, outcomes: int, rng: np.random.Generator) -> List[np.ndarray]:
    """随机 POVM：M_z = S^{−1/2} G_z S^{−1/2}"""
    gs = []
    for _ in range(outcomes):
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        gs.append(g @ g.conj().T)
    s = sum(gs)
    lam, v = np.linalg.eigh(s)
    inv_sqrt = v @ np.diag(lam ** -0.5) @ v.conj().T
    return [inv_sqrt @ g @ inv_sqrt for g in gs]


def random_projective_povm(dim: int, rng: np.random.Generator) -> List[np.ndarray]:
    """随机基下的秩一投影测量"""
    u = unitary_group.rvs(dim, random_state=rng) if dim > 1 else np.eye(1, dtype=complex)
    return [np.outer(u[:, k], u[:, k].conj()) for k in range(dim)]
