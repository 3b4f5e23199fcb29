# modules/bounds/theorem_two.py
"""
指数截断约束下的客观性界限

ζ(d) = (27 d̃² d⁴ s / N)^(1/3) + 4 d̃ e^{−ωd/2}，其中 ln(2)·ς = s 以奈特计。
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..core.exceptions import DomainTooSmall, InvalidParameter, validate_positive_float
from .lambert import lambert_w0_exp
from .large_count import CountLike, ln_count


@dataclass(frozen=True)
class Thm2Query:
    omega: float
    Omega: float
    N: CountLike
    delta: float
    d: Optional[int] = None


@dataclass(frozen=True)
class Thm2Intermediates:
    """d̃, ñ, s (奈特), ς (比特), γ₁, γ₂"""
    d_tilde: float
    n_tilde: float
    s: float
    varsigma: float
    gamma1: float
    gamma2: float

    def to_dict(self) -> dict:
        return {
            "d_tilde": self.d_tilde,
            "n_tilde": self.n_tilde,
            "s": self.s,
            "varsigma": self.varsigma,
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
        }


def gibbs_entropy_nats(omega: float) -> Tuple[float, float]:
    """ñ = 1/(e^ω − 1)，s = (ñ+1) ln(ñ+1) − ñ ln ñ"""
    omega = validate_positive_float(omega, "omega")
    n_tilde = 1.0 / math.expm1(omega)
    if n_tilde == 0.0:
        return 0.0, 0.0
    s = (n_tilde + 1.0) * math.log1p(n_tilde) - n_tilde * math.log(n_tilde)
    return n_tilde, max(s, 0.0)


def _check_omegas(omega: float, Omega: float) -> Tuple[float, float]:
    omega = validate_positive_float(omega, "omega")
    Omega = validate_positive_float(Omega, "Omega")
    if not Omega > 1.0:
        raise InvalidParameter(f"Ω 必须大于 1，当前 {Omega}", "Omega", Omega)
    return omega, Omega


def d_tilde(omega: float, Omega: float) -> float:
    """d̃ = Ω e^ω/(e^ω − 1) = Ω/(1 − e^{−ω})"""
    omega, Omega = _check_omegas(omega, Omega)
    return Omega / -math.expm1(-omega)


def thm2_intermediates(omega: float, Omega: float) -> Thm2Intermediates:
    omega, Omega = _check_omegas(omega, Omega)
    dt = d_tilde(omega, Omega)
    n_tilde, s = gibbs_entropy_nats(omega)
    if s <= 0.0:
        raise InvalidParameter("ω 过大，熵 s 下溢为 0", "omega", omega)
    gamma1 = 2.0 * dt ** 2 * s / (3.0 * omega ** 4)
    gamma2 = 3.0 * dt * omega ** 4 / (16.0 * s)
    return Thm2Intermediates(dt, n_tilde, s, s / math.log(2.0), gamma1, gamma2)


def _zeta_log(d: float, omega: float, inter: Thm2Intermediates, ln_n: float) -> float:
    first = math.exp((math.log(27.0) + 2.0 * math.log(inter.d_tilde) + 4.0 * math.log(d)
                      + math.log(inter.s) - ln_n) / 3.0)
    second = 4.0 * math.exp(math.log(inter.d_tilde) - omega * d / 2.0)
    return first + second


def thm2_zeta(d: int, omega: float, Omega: float, N: CountLike) -> float:
    """(27 d̃² d⁴ s / N)^(1/3) + 4 d̃ e^{−ωd/2}"""
    if isinstance(d, bool) or int(d) != d or d < 1:
        raise InvalidParameter(f"截断维数 d 必须为正整数，当前 {d}", "d", d)
    return _zeta_log(float(d), omega, thm2_intermediates(omega, Omega), ln_count(N))


def thm2_zeta_real(d: float, omega: float, Omega: float, N: CountLike) -> float:
    """实数 d 版本，用于驻点核对"""
    d = float(d)
    if not d > 0:
        raise InvalidParameter(f"d 必须为正，当前 {d}", "d", d)
    return _zeta_log(d, omega, thm2_intermediates(omega, Omega), ln_count(N))


def zeta_evaluator(omega: float, Omega: float, N: CountLike):
    """固定 (ω, Ω, N) 后返回 d ↦ ζ(d)，避免重复计算中间量"""
    inter = thm2_intermediates(omega, Omega)
    ln_n = ln_count(N)
    return lambda d: _zeta_log(float(d), omega, inter, ln_n)


@dataclass(frozen=True)
class DMin:
    """驻点的 W 形式与 ln 近似"""
    w_form: float
    ln_form: float
    log_argument: float


def thm2_dmin(omega: float, Omega: float, N: CountLike) -> DMin:
    """
    d_min = 2W(81B³Nω⁴/(1024A³))/(3ω)

    A = (27 d̃² s)^(1/3)，B = 4d̃；自变量在对数域中给出。
    """
    inter = thm2_intermediates(omega, Omega)
    ln_n = ln_count(N)
    ln_a3 = math.log(27.0) + 2.0 * math.log(inter.d_tilde) + math.log(inter.s)
    ln_b3 = 3.0 * math.log(4.0 * inter.d_tilde)
    log_arg = math.log(81.0) + ln_b3 + ln_n + 4.0 * math.log(omega) - math.log(1024.0) - ln_a3
    w = lambert_w0_exp(log_arg)
    if not w > 0.0:
        raise InvalidParameter("Lambert W 自变量非正", "N", N)
    return DMin(2.0 * w / (3.0 * omega), 2.0 * log_arg / (3.0 * omega), log_arg)


def thm2_closed_from_gammas(gamma1: float, gamma2: float, N: CountLike) -> float:
    """8(γ₁/N)^(1/3)[1 + ¼(ln(γ₂N))^(4/3)]"""
    ln_n = ln_count(N)
    ln_g2n = math.log(gamma2) + ln_n
    if ln_g2n <= 0.0:
        raise DomainTooSmall("闭式界限要求 γ₂N > 1", math.exp(ln_g2n))
    prefactor = 8.0 * math.exp((math.log(gamma1) - ln_n) / 3.0)
    return prefactor * (1.0 + 0.25 * ln_g2n ** (4.0 / 3.0))


def thm2_closed(omega: float, Omega: float, N: CountLike) -> float:
    inter = thm2_intermediates(omega, Omega)
    return thm2_closed_from_gammas(inter.gamma1, inter.gamma2, N)
