# modules/fock_core/special_states.py
"""
特殊态：截断吉布斯态与双模压缩态 |φ⟩ = 𝒩 Σ φ_j |j,j⟩
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..core.constants import GibbsMode
from ..core.exceptions import validate_positive_float, validate_positive_int
from .operators import FockOperator, FockState


def gibbs_state(omega: float, dim: int, mode: Union[GibbsMode, str] = GibbsMode.EXACT_TAIL) -> FockState:
    """
    截断吉布斯态 γ(ω) = (1 − e^{−ω}) e^{−ω n̂}

    exact-tail 保留解析系数，迹为 1 − e^{−ω·dim}；renormalized 重新归一化到 1。
    """
    omega = validate_positive_float(omega, "omega")
    dim = validate_positive_int(dim, "dim")
    mode = GibbsMode(mode)
    n = np.arange(dim)
    populations = -np.expm1(-omega) * np.exp(-omega * n)
    if mode is GibbsMode.RENORMALIZED:
        populations = populations / populations.sum()
    return FockState(FockOperator(np.diag(populations).astype(complex)), normalized=mode is GibbsMode.RENORMALIZED)


@dataclass(frozen=True)
class TwoModeSqueezedState:
    """双模压缩真空的截断表示"""
    omega: float
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "omega", validate_positive_float(self.omega, "omega"))
        object.__setattr__(self, "dim", validate_positive_int(self.dim, "dim"))

    @property
    def phi(self) -> np.ndarray:
        """φ_j = e^{−ωj/2}"""
        return np.exp(-self.omega * np.arange(self.dim) / 2)

    @property
    def norm_const(self) -> float:
        """𝒩 = √(1 − e^{−ω})"""
        return float(np.sqrt(-np.expm1(-self.omega)))

    @property
    def mean_photon(self) -> float:
        """未截断约化态的平均光子数 ñ = 1/(e^ω − 1)"""
        return float(1.0 / np.expm1(self.omega))

    def coefficients(self) -> np.ndarray:
        """系数矩阵 Ψ，Ψ_jj = 𝒩 φ_j"""
        return np.diag(self.norm_const * self.phi).astype(complex)

    def ket(self) -> np.ndarray:
        return self.coefficients().reshape(-1)

    def squared_norm(self) -> float:
        """闭式几何和 1 − e^{−ω·dim}"""
        return float(-np.expm1(-self.omega * self.dim))

    def state(self) -> FockState:
        return FockState.from_ket(self.ket(), dims=(self.dim, self.dim), normalized=False)


def two_mode_squeezed(omega: float, dim: int) -> FockState:
    """截断双模压缩态的投影算符，迹为 1 − e^{−ω·dim}"""
    return TwoModeSqueezedState(omega, dim).state()


def maximally_entangled(d: int) -> np.ndarray:
    """|Φ⟩ = d^{−1/2} Σ |k,k⟩ 的系数矩阵"""
    d = validate_positive_int(d, "d")
    return np.eye(d, dtype=complex) / np.sqrt(d)
