# modules/bounds/theorem_one.py
"""
平均能量约束下的客观性界限

ζ(d, m) = √(2 d⁶ ln d / m) + 4√(n̄/d) + 2m/N，所有项在对数域中求值，N 可达 10^300。
允许的 m 满足 1 ≤ m ≤ N。
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..core.constants import FormulaTag
from ..core.exceptions import InvalidParameter, validate_non_negative_float, validate_positive_int
from .large_count import CountLike, ln_count

# 17·(2/7)^(14/17)
ANALYTIC_COEFFICIENT = 17.0 * (2.0 / 7.0) ** (14.0 / 17.0)


@dataclass(frozen=True)
class Thm1Query:
    nbar: float
    N: CountLike
    delta: float
    d: Optional[int] = None
    m: Optional[int] = None


@dataclass(frozen=True)
class BoundResult:
    """界限值（已除以 δ）与所选参数"""
    value: float
    zeta: float
    formula: FormulaTag
    d: Optional[int] = None
    m: Optional[int] = None
    degenerate: bool = False
    d_real: Optional[float] = None

    @classmethod
    def from_zeta(cls, zeta: float, delta: float, formula: FormulaTag, **kwargs) -> "BoundResult":
        if not 0.0 < delta < 1.0:
            raise InvalidParameter("δ 必须在 (0, 1) 内", "delta", delta)
        return cls(value=zeta / delta, zeta=zeta, formula=formula, **kwargs)

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "zeta": self.zeta,
            "formula": self.formula.value,
            "d": self.d,
            "m": self.m,
            "degenerate": self.degenerate,
            "d_real": self.d_real,
        }


def _check_d_real(d: float) -> float:
    d = float(d)
    if not d >= 2.0 or not math.isfinite(d):
        raise InvalidParameter(f"截断维数 d 必须不小于 2，当前 {d}", "d", d)
    return d


def _check_d(d: int) -> int:
    d = validate_positive_int(d, "d")
    if d < 2:
        raise InvalidParameter(f"截断维数 d 必须不小于 2，当前 {d}", "d", d)
    return d


def _ln_c(d: float) -> float:
    """ln c，c = 2 d⁶ ln d"""
    return math.log(2.0) + 6.0 * math.log(d) + math.log(math.log(d))


def _energy_term(d: float, nbar: float) -> float:
    return 4.0 * math.sqrt(nbar / d)


def _zeta_log(d: float, m: float, nbar: float, ln_n: float) -> float:
    first = math.exp(0.5 * (_ln_c(d) - math.log(m)))
    last = 2.0 * math.exp(math.log(m) - ln_n)
    return first + _energy_term(d, nbar) + last


def thm1_zeta(d: int, m: int, nbar: float, N: CountLike) -> float:
    """√(2 d⁶ ln d / m) + 4√(n̄/d) + 2m/N"""
    d = _check_d(d)
    m = validate_positive_int(m, "m")
    nbar = validate_non_negative_float(nbar, "nbar")
    return _zeta_log(d, m, nbar, ln_count(N))


def thm1_zeta_log2(d: int, m: int, nbar: float, N: CountLike) -> float:
    """字面形式 √(2 ln 2 · d⁶ log₂ d / m) + 4√(n̄/d) + 2m/N，用于核对自然对数约定"""
    d = _check_d(d)
    m = validate_positive_int(m, "m")
    ln_n = ln_count(N)
    first = math.sqrt(2.0 * math.log(2.0) * d ** 6 * math.log2(d) / m)
    return first + _energy_term(d, nbar) + 2.0 * m * math.exp(-ln_n)


def _ln_m_opt(d: float, ln_n: float) -> float:
    return (_ln_c(d) + 2.0 * ln_n - math.log(16.0)) / 3.0


def thm1_m_opt(d: int, N: CountLike) -> float:
    """√(c/m) + 2m/N 的驻点 m_min = (c N²/16)^(1/3)"""
    return math.exp(_ln_m_opt(_check_d(d), ln_count(N)))


def _f_log(d: float, nbar: float, ln_n: float) -> float:
    tail = math.exp((math.log(27.0) + 6.0 * math.log(d) + math.log(math.log(d)) - ln_n) / 3.0)
    return _energy_term(d, nbar) + tail


def thm1_f(d: int, nbar: float, N: CountLike) -> float:
    """对 m 连续优化后的目标 4√(n̄/d) + (27 d⁶ ln d / N)^(1/3)"""
    d = _check_d(d)
    nbar = validate_non_negative_float(nbar, "nbar")
    return _f_log(d, nbar, ln_count(N))


def thm1_f_real(d: float, nbar: float, N: CountLike) -> float:
    """thm1_f 的实数 d 版本，仅用于松弛核对"""
    return _f_log(_check_d_real(d), validate_non_negative_float(nbar, "nbar"), ln_count(N))


def objective_log(d: float, nbar: float, ln_n: float) -> Tuple[float, float]:
    """
    在 1 ≤ m ≤ N 约束下对 m 优化后的目标

    Returns:
        (目标值, 所用的实数 m)
    """
    ln_m = _ln_m_opt(d, ln_n)
    if 0.0 <= ln_m <= ln_n:
        return _f_log(d, nbar, ln_n), math.exp(ln_m)
    # ζ 对 m 凸，驻点越界时取边界
    m = 1.0 if ln_m < 0.0 else math.exp(ln_n)
    return _zeta_log(d, m, nbar, ln_n), m


def thm1_objective(d: int, nbar: float, N: CountLike) -> float:
    d = _check_d(d)
    nbar = validate_non_negative_float(nbar, "nbar")
    return objective_log(d, nbar, ln_count(N))[0]


def thm1_relaxed(d: float, nbar: float, N: CountLike) -> float:
    """ln d ≤ d 松弛后的目标 4√(n̄/d) + (27 d⁷/N)^(1/3)"""
    d = _check_d_real(d)
    ln_n = ln_count(N)
    return _energy_term(d, nbar) + math.exp((math.log(27.0) + 7.0 * math.log(d) - ln_n) / 3.0)


def thm1_relaxed_dmin(nbar: float, N: CountLike) -> float:
    """松弛目标的驻点 d^(17/6) = 3a/(14b)，a = 4√n̄，b = 3N^(−1/3)"""
    nbar = validate_non_negative_float(nbar, "nbar")
    if nbar == 0.0:
        return 2.0
    ln_n = ln_count(N)
    ln_ratio = math.log(3.0 * 4.0 * math.sqrt(nbar) / (14.0 * 3.0)) + ln_n / 3.0
    return math.exp(6.0 * ln_ratio / 17.0)


def thm1_analytic(nbar: float, N: CountLike) -> Tuple[float, bool]:
    """
    17·(2/7)^(14/17)·(n̄⁷/N)^(1/17)

    Returns:
        (值, 是否退化)；n̄ = 0 时返回 (0, True)
    """
    nbar = validate_non_negative_float(nbar, "nbar")
    ln_n = ln_count(N)
    if nbar == 0.0:
        return 0.0, True
    return ANALYTIC_COEFFICIENT * math.exp((7.0 * math.log(nbar) - ln_n) / 17.0), False
