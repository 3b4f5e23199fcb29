# modules/channels/choi.py
"""
两种 Choi–Jamiołkowski 构造

- 截断 Choi 算符 J_T：信道作用在 d 维最大纠缠态的一半上
- 修正 Choi 态 J(Λ)：信道作用在截断双模压缩态 |φ⟩ 的一半上
"""

from dataclasses import dataclass

import numpy as np

from ..core.exceptions import ShapeError, validate_positive_float, validate_positive_int
from ..fock_core.operators import FockOperator, FockState
from ..fock_core.special_states import TwoModeSqueezedState, maximally_entangled
from .channel import QuantumChannel, apply_extended_second


@dataclass(frozen=True, eq=False)
class TruncatedChoi:
    d: int
    state: FockState


@dataclass(frozen=True, eq=False)
class ModifiedChoi:
    omega: float
    dim: int
    state: FockState


def _restrict_input(ch: QuantumChannel, d: int) -> list:
    """Kraus 算符限制在前 d 个 Fock 能级上"""
    return [k[:, :d] for k in ch.kraus]


def truncated_choi(ch: QuantumChannel, d: int) -> TruncatedChoi:
    """J_T = id_A ⊗ Λ_{A'}(Φ_{AA'})，Φ 为 d 维最大纠缠态"""
    d = validate_positive_int(d, "d")
    if d > ch.din:
        raise ShapeError("截断维数超过信道输入维数", expected=ch.din, actual=d)
    psi = maximally_entangled(d)
    out = 0
    for k in _restrict_input(ch, d):
        v = (psi @ k.T).reshape(-1)
        out = out + np.outer(v, v.conj())
    return TruncatedChoi(d, FockState(FockOperator(out, (d, ch.dout))))


def modified_choi(ch: QuantumChannel, omega: float, dim: int) -> ModifiedChoi:
    """J(Λ) = id_A ⊗ Λ_{A'}[|φ⟩⟨φ|]，迹为 1 − e^{−ω·dim}"""
    omega = validate_positive_float(omega, "omega")
    dim = validate_positive_int(dim, "dim")
    if ch.din != dim:
        raise ShapeError("修正 Choi 态要求 din = dim", expected=dim, actual=ch.din)
    phi = TwoModeSqueezedState(omega, dim)
    out = apply_extended_second(ch, phi.coefficients())
    return ModifiedChoi(omega, dim, FockState(FockOperator(out, (dim, ch.dout)), normalized=False))


def truncate_input_side(state: np.ndarray, dims: tuple, d: int) -> np.ndarray:
    """(Π_d ⊗ I) ρ (Π_d ⊗ I)"""
    da, db = dims
    mask = np.zeros(da)
    mask[:d] = 1.0
    p = np.kron(np.diag(mask), np.eye(db))
    return p @ state @ p
