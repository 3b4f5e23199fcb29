# modules/gaussian/gaussian_state.py
"""
单模高斯态的能量矩与指数截断条件

⟨e^{ωn̂}⟩ = 2 exp[2Re(α)²/κ₊² + 2Im(α)²/κ₋²] / ((e^ω−1)κ₊κ₋)，
κ± = √(coth(ω/2) − (2m+1)e^{±2r})。
数值上以 u± = (e^ω−1)κ±²/2 = 1 − (e^ω−1)((2m+1)e^{±2r} − 1)/2 表示，真空时 u± = 1 精确成立。
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import optimize

from ..core.exceptions import InvalidParameter, validate_non_negative_float, validate_positive_float

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GaussianState:
    """位移 α、热光子数 m、压缩参数 r ≥ 0"""
    alpha: complex = 0j
    m: float = 0.0
    r: float = 0.0

    def __post_init__(self):
        alpha = complex(self.alpha)
        m = validate_non_negative_float(self.m, "m")
        r = float(self.r)
        if not math.isfinite(r):
            raise InvalidParameter("压缩参数必须有限", "r", r)
        if r < 0:
            # 相位旋转 π/2 交换 x、p 两个正交分量
            r = -r
            alpha = complex(alpha.imag, alpha.real)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "r", r)

    @property
    def displacement(self) -> np.ndarray:
        """d = √2 (Re α, Im α)"""
        return math.sqrt(2.0) * np.array([self.alpha.real, self.alpha.imag])

    @property
    def covariance(self) -> np.ndarray:
        """V = diag(e^{2r}(2m+1), e^{−2r}(2m+1))"""
        nu = 2.0 * self.m + 1.0
        return np.diag([math.exp(2 * self.r) * nu, math.exp(-2 * self.r) * nu])


@dataclass(frozen=True)
class CutoffReport:
    omega: float
    kappa_plus: float
    kappa_minus: float
    moment: float
    feasible: bool
    satisfies_Omega: Optional[bool] = None

    def to_dict(self) -> Dict[str, object]:
        return {
            "omega": self.omega,
            "kappa_plus": self.kappa_plus,
            "kappa_minus": self.kappa_minus,
            "moment": self.moment,
            "feasible": self.feasible,
            "satisfies_Omega": self.satisfies_Omega,
        }


def mean_photon(g: GaussianState) -> float:
    """⟨n̂⟩ = |α|² + m cosh(2r) + sinh² r"""
    return abs(g.alpha) ** 2 + g.m * math.cosh(2 * g.r) + math.sinh(g.r) ** 2


def _u_factors(m, r, omega: float):
    """u± = 1 − (e^ω−1)·((2m+1)e^{±2r} − 1)/2，支持数组"""
    em1 = math.expm1(omega)
    u_plus = 1.0 - em1 * (2.0 * m + (2.0 * m + 1.0) * np.expm1(2.0 * r)) / 2.0
    u_minus = 1.0 - em1 * (2.0 * m + (2.0 * m + 1.0) * np.expm1(-2.0 * r)) / 2.0
    return em1, u_plus, u_minus


def moment_arrays(a_re, a_im, m, r, omega: float) -> np.ndarray:
    """向量化的 ⟨e^{ωn̂}⟩，不可行处为 inf"""
    em1, u_plus, u_minus = _u_factors(np.asarray(m, float), np.asarray(r, float), omega)
    feasible = u_plus > 0
    safe_plus = np.where(feasible, u_plus, 1.0)
    safe_minus = np.where(feasible, u_minus, 1.0)
    exponent = em1 * (np.asarray(a_re) ** 2 / safe_plus + np.asarray(a_im) ** 2 / safe_minus)
    moment = np.exp(exponent) / np.sqrt(safe_plus * safe_minus)
    return np.where(feasible, moment, np.inf)


def exp_moment(g: GaussianState, omega: float, Omega: Optional[float] = None) -> CutoffReport:
    """闭式 ⟨e^{ωn̂}⟩ 与可行性判断"""
    omega = validate_positive_float(omega, "omega")
    em1, u_plus, u_minus = _u_factors(g.m, g.r, omega)
    u_plus, u_minus = float(u_plus), float(u_minus)
    if u_plus <= 0:
        return CutoffReport(omega, 0.0, math.sqrt(max(2.0 * u_minus / em1, 0.0)), math.inf, False,
                            False if Omega is not None else None)
    kappa_plus = math.sqrt(2.0 * u_plus / em1)
    kappa_minus = math.sqrt(2.0 * u_minus / em1)
    exponent = em1 * (g.alpha.real ** 2 / u_plus + g.alpha.imag ** 2 / u_minus)
    moment = math.exp(exponent) / math.sqrt(u_plus * u_minus)
    satisfies = None if Omega is None else bool(moment <= Omega)
    return CutoffReport(omega, kappa_plus, kappa_minus, moment, True, satisfies)


def cutoff_params(nbar: float, epsilon: float, Omega: float) -> float:
    """
    ω = min{2ε/(3/2 + 2n̄(2+n̄)), (1−ε)/n̄ · ln((1−ε)Ω)}

    要求 Ω > 1/(1−ε)；n̄ = 0 时第二项视为 +∞。
    """
    nbar = validate_non_negative_float(nbar, "nbar")
    epsilon = float(epsilon)
    if not 0.0 < epsilon < 1.0:
        raise InvalidParameter("ε 必须在 (0, 1) 内", "epsilon", epsilon)
    Omega = validate_positive_float(Omega, "Omega")
    if not Omega > 1.0 / (1.0 - epsilon):
        raise InvalidParameter(f"Ω 必须大于 1/(1−ε) = {1.0 / (1.0 - epsilon):.6g}", "Omega", Omega)
    first = 2.0 * epsilon / (1.5 + 2.0 * nbar * (2.0 + nbar))
    second = math.inf if nbar == 0.0 else (1.0 - epsilon) / nbar * math.log((1.0 - epsilon) * Omega)
    omega = min(first, second)
    assert omega < 2.0
    return omega


def omega_max(nbar: float) -> float:
    """能量 ≤ n̄ 的高斯态集合矩有限的 ω 上界 2 artanh(1/(√n̄+√(n̄+1))²)"""
    nbar = validate_non_negative_float(nbar, "nbar")
    if nbar == 0.0:
        return math.inf
    return 2.0 * math.atanh(1.0 / (math.sqrt(nbar) + math.sqrt(nbar + 1.0)) ** 2)


def _worst_case_grid(nbar: float, omega: float, points: int) -> Tuple[float, float, float]:
    r_max = math.asinh(math.sqrt(nbar))
    r = np.linspace(0.0, r_max, points)[:, None]
    t = np.linspace(0.0, 1.0, points)[None, :]
    sinh2 = np.sinh(r) ** 2
    m = t * (nbar - sinh2) / np.cosh(2 * r)
    a2 = np.clip(nbar - m * np.cosh(2 * r) - sinh2, 0.0, None)
    values = moment_arrays(np.sqrt(a2), 0.0, m, r, omega)
    i, j = np.unravel_index(np.argmax(values), values.shape)
    return float(values[i, j]), float(r[i, 0]), float(t[0, j])


def worst_case_moment(nbar: float, omega: float, points: int = 81) -> float:
    """
    sup ⟨e^{ωn̂}⟩ over Gaussian states with ⟨n̂⟩ ≤ n̄

    位移沿 κ₊ 方向并吸收剩余能量；(r, m) 先网格搜索再有界局部细化。
    """
    nbar = validate_non_negative_float(nbar, "nbar")
    omega = validate_positive_float(omega, "omega")
    if nbar == 0.0:
        return 1.0
    if not omega < omega_max(nbar):
        raise InvalidParameter(f"ω 必须小于 {omega_max(nbar):.6g}", "omega", omega)
    best, r0, t0 = _worst_case_grid(nbar, omega, points)
    r_max = math.asinh(math.sqrt(nbar))

    def negative(x):
        r, t = float(np.clip(x[0], 0.0, r_max)), float(np.clip(x[1], 0.0, 1.0))
        sinh2 = math.sinh(r) ** 2
        m = t * (nbar - sinh2) / math.cosh(2 * r)
        a2 = max(nbar - m * math.cosh(2 * r) - sinh2, 0.0)
        return -float(moment_arrays(math.sqrt(a2), 0.0, m, r, omega))

    result = optimize.minimize(negative, x0=[r0, t0], method="L-BFGS-B", bounds=[(0.0, r_max), (0.0, 1.0)])
    if result.success and -result.fun > best:
        best = float(-result.fun)
    return best
