# modules/channels/channel.py
"""
量子信道

以 Kraus 列表保存完全正保迹映射，Choi 矩阵按需导出。
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..core.constants import IDENTITY_TOL
from ..core.exceptions import (
    FragmentIndexError,
    InvalidParameter,
    ShapeError,
    validate_positive_int,
)
from ..fock_core.operators import FockOperator, FockState, OperatorLike, as_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """Kraus 表示的信道 Λ: L(C^din) → L(C^dout)"""
    din: int
    dout: int
    kraus: Tuple[np.ndarray, ...]

    def __post_init__(self):
        din = validate_positive_int(self.din, "din")
        dout = validate_positive_int(self.dout, "dout")
        if len(self.kraus) == 0:
            raise ShapeError("Kraus 列表不能为空")
        ops = []
        for k in self.kraus:
            k = np.array(k, dtype=complex)
            if k.shape != (dout, din):
                raise ShapeError("Kraus 算符形状错误", expected=(dout, din), actual=k.shape)
            k.setflags(write=False)
            ops.append(k)
        residual = completeness_residual(ops, din)
        if residual > IDENTITY_TOL:
            raise InvalidParameter(f"Kraus 算符不满足 Σ K†K = I，残差 {residual:.3e}", "kraus", residual)
        object.__setattr__(self, "din", din)
        object.__setattr__(self, "dout", dout)
        object.__setattr__(self, "kraus", tuple(ops))

    @property
    def stacked(self) -> np.ndarray:
        """Kraus 算符竖直堆叠成的等距 V，形状 (r·dout, din)"""
        return np.vstack(self.kraus)

    def compose(self, other: "QuantumChannel") -> "QuantumChannel":
        """先作用 other 再作用 self"""
        if other.dout != self.din:
            raise ShapeError("信道复合维数不匹配", expected=self.din, actual=other.dout)
        kraus = [a @ b for a in self.kraus for b in other.kraus]
        return QuantumChannel(other.din, self.dout, tuple(kraus))


def completeness_residual(kraus: Sequence[np.ndarray], din: int) -> float:
    """‖Σ K†K − I‖ 的最大元素"""
    total = sum(k.conj().T @ k for k in kraus)
    return float(np.max(np.abs(total - np.eye(din))))


def apply(ch: QuantumChannel, rho: OperatorLike) -> FockState:
    """Λ(ρ) = Σ K ρ K†"""
    m = as_matrix(rho)
    if m.shape != (ch.din, ch.din):
        raise ShapeError("输入态维数与信道不匹配", expected=ch.din, actual=m.shape)
    out = sum(k @ m @ k.conj().T for k in ch.kraus)
    normalized = rho.normalized if isinstance(rho, FockState) else True
    return FockState(FockOperator(out), normalized)


def apply_local(ch: QuantumChannel, rho: OperatorLike, dims: Sequence[int], subsystem: int) -> FockOperator:
    """
    在多体算符的某个子系统上作用信道，其余子系统恒等

    Returns:
        输出算符，dims 中对应位置替换为 dout
    """
    m = as_matrix(rho)
    dims = tuple(int(d) for d in dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise ShapeError("子系统维数之积与矩阵大小不符", expected=dims, actual=m.shape)
    if dims[subsystem] != ch.din:
        raise ShapeError("子系统维数与信道输入不匹配", expected=ch.din, actual=dims[subsystem])
    left = int(np.prod(dims[:subsystem]))
    right = int(np.prod(dims[subsystem + 1:]))
    out = 0
    for k in ch.kraus:
        big = np.kron(np.kron(np.eye(left), k), np.eye(right))
        out = out + big @ m @ big.conj().T
    out_dims = dims[:subsystem] + (ch.dout,) + dims[subsystem + 1:]
    return FockOperator(out, out_dims)


def apply_extended(ch: QuantumChannel, psi: np.ndarray) -> np.ndarray:
    """
    (Λ ⊗ id)|ψ⟩⟨ψ|，ψ 以系数矩阵给出

    Args:
        psi: 形状 (din, d_anc)，行指标为信道输入
    Returns:
        (dout·d_anc) 维输出矩阵
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[0] != ch.din:
        raise ShapeError("输入系数矩阵行数与信道输入维数不匹配", expected=ch.din, actual=psi.shape)
    out = 0
    for k in ch.kraus:
        v = (k @ psi).reshape(-1)
        out = out + np.outer(v, v.conj())
    return out


def choi_matrix(ch: QuantumChannel) -> np.ndarray:
    """未归一化的 Choi 矩阵 Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|)"""
    return apply_extended_second(ch, np.eye(ch.din, dtype=complex))


def apply_extended_second(ch: QuantumChannel, psi: np.ndarray) -> np.ndarray:
    """(id ⊗ Λ)|ψ⟩⟨ψ|，ψ 的列指标为信道输入"""
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[1] != ch.din:
        raise ShapeError("输入系数矩阵列数与信道输入维数不匹配", expected=ch.din, actual=psi.shape)
    out = 0
    for k in ch.kraus:
        v = (psi @ k.T).reshape(-1)
        out = out + np.outer(v, v.conj())
    return out


def channel_from_choi(choi: np.ndarray, din: int, dout: int, tol: float = 1e-14) -> QuantumChannel:
    """由 Choi 矩阵的本征分解重建 Kraus 算符"""
    choi = np.asarray(choi, dtype=complex)
    if choi.shape != (din * dout, din * dout):
        raise ShapeError("Choi 矩阵大小错误", expected=(din * dout, din * dout), actual=choi.shape)
    eigenvalues, vectors = np.linalg.eigh((choi + choi.conj().T) / 2)
    kraus = []
    for lam, vec in zip(eigenvalues, vectors.T):
        if lam > tol:
            kraus.append(np.sqrt(lam) * vec.reshape(din, dout).T)
    return QuantumChannel(din, dout, tuple(kraus))


def random_channel(din: int, dout: int, kraus_count: int, seed: int) -> QuantumChannel:
    """
    随机信道

    高斯随机 Kraus 堆叠经极分解正交化为等距，按种子确定。
    """
    din = validate_positive_int(din, "din")
    dout = validate_positive_int(dout, "dout")
    kraus_count = validate_positive_int(kraus_count, "kraus_count")
    if kraus_count * dout < din:
        raise InvalidParameter("kraus_count·dout 必须不小于 din 才能保迹", "kraus_count", kraus_count)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((kraus_count * dout, din)) + 1j * rng.standard_normal((kraus_count * dout, din))
    isometry, _ = linalg.polar(g, side="right")
    kraus = tuple(isometry[i * dout:(i + 1) * dout, :] for i in range(kraus_count))
    return QuantumChannel(din, dout, kraus)


def fragment_channel(ch: QuantumChannel, j: int, frag_dims: Sequence[int]) -> QuantumChannel:
    """
    有效碎片信道 Λ_j = Tr_{B\\B_j} ∘ Λ

    碎片编号 j 从 1 开始，与 B_1, …, B_N 对应。
    """
    frag_dims = tuple(int(d) for d in frag_dims)
    if int(np.prod(frag_dims)) != ch.dout:
        raise ShapeError("碎片维数之积与信道输出维数不符", expected=ch.dout, actual=frag_dims)
    n = len(frag_dims)
    if not 1 <= j <= n:
        raise FragmentIndexError(f"碎片编号 {j} 越界", index=j, count=n)
    axis = j - 1
    rest = [d for i, d in enumerate(frag_dims) if i != axis]
    kraus: List[np.ndarray] = []
    for k in ch.kraus:
        tensor = np.moveaxis(k.reshape(frag_dims + (ch.din,)), axis, 0)
        tensor = tensor.reshape(frag_dims[axis], int(np.prod(rest)) if rest else 1, ch.din)
        for e in range(tensor.shape[1]):
            block = tensor[:, e, :]
            if np.any(np.abs(block) > 0):
                kraus.append(block)
    return QuantumChannel(ch.din, frag_dims[axis], tuple(kraus))


# ---- 常用信道 ----

def identity_channel(dim: int) -> QuantumChannel:
    return QuantumChannel(dim, dim, (np.eye(dim, dtype=complex),))


def dephasing_channel(dim: int) -> QuantumChannel:
    """完全退相位 {|i⟩⟨i|}"""
    kraus = []
    for i in range(dim):
        k = np.zeros((dim, dim), dtype=complex)
        k[i, i] = 1.0
        kraus.append(k)
    return QuantumChannel(dim, dim, tuple(kraus))


def depolarizing_channel(din: int, dout: Optional[int] = None) -> QuantumChannel:
    """完全退极化 X ↦ Tr(X) I/dout"""
    dout = dout or din
    kraus = []
    for a, b in itertools.product(range(dout), range(din)):
        k = np.zeros((dout, din), dtype=complex)
        k[a, b] = 1.0 / np.sqrt(dout)
        kraus.append(k)
    return QuantumChannel(din, dout, tuple(kraus))


def replacement_channel(din: int, sigma: np.ndarray) -> QuantumChannel:
    """替换信道 X ↦ Tr(X) σ"""
    sigma = np.asarray(sigma, dtype=complex)
    dout = sigma.shape[0]
    eigenvalues, vectors = np.linalg.eigh((sigma + sigma.conj().T) / 2)
    kraus = []
    for lam, vec in zip(eigenvalues, vectors.T):
        if lam > 1e-15:
            for b in range(din):
                kraus.append(np.sqrt(lam) * np.outer(vec, np.eye(din)[b]))
    return QuantumChannel(din, dout, tuple(kraus))


def broadcast_channel(dim: int, copies: int) -> QuantumChannel:
    """|i⟩ ↦ |i⟩^{⊗copies} 的等距广播"""
    copies = validate_positive_int(copies, "copies")
    v = np.zeros((dim ** copies, dim), dtype=complex)
    for i in range(dim):
        index = sum(i * dim ** p for p in range(copies))
        v[index, i] = 1.0
    return QuantumChannel(dim, dim ** copies, (v,))
