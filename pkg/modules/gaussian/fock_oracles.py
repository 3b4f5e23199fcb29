# modules/gaussian/fock_oracles.py
"""
三类解析高斯态的 Fock 光子数分布及 ⟨e^{ωn̂}⟩ 级数

求和在几何控制的尾部上界低于部分和的 1e−14 时停止。
"""

import math
from typing import Tuple

import numpy as np
from scipy.special import gammaln

from ..core.exceptions import InvalidParameter

TAIL_RTOL = 1e-14
MAX_TERMS = 100_000


def coherent_log_pn(alpha_abs2: float, n: np.ndarray) -> np.ndarray:
    """泊松分布 ln p_n"""
    if alpha_abs2 == 0.0:
        return np.where(n == 0, 0.0, -np.inf)
    return -alpha_abs2 + n * math.log(alpha_abs2) - gammaln(n + 1)


def thermal_log_pn(m: float, n: np.ndarray) -> np.ndarray:
    """几何分布 ln p_n，q = m/(m+1)"""
    if m == 0.0:
        return np.where(n == 0, 0.0, -np.inf)
    q = m / (m + 1.0)
    return math.log1p(-q) + n * math.log(q)


def squeezed_log_p2n(r: float, n: np.ndarray) -> np.ndarray:
    """压缩真空 ln p_{2n} = ln[C(2n,n) tanh^{2n} r / (4^n cosh r)]"""
    if r == 0.0:
        return np.where(n == 0, 0.0, -np.inf)
    log_binom = gammaln(2 * n + 1) - 2 * gammaln(n + 1)
    return log_binom + 2 * n * math.log(math.tanh(r)) - n * math.log(4.0) - math.log(math.cosh(r))


def photon_distribution(family: str, param: float, nmax: int) -> np.ndarray:
    """p_n, n = 0..nmax−1"""
    n = np.arange(nmax)
    if family == "coherent":
        return np.exp(coherent_log_pn(param, n))
    if family == "thermal":
        return np.exp(thermal_log_pn(param, n))
    if family == "squeezed":
        p = np.zeros(nmax)
        half = np.arange((nmax + 1) // 2)
        p[0::2] = np.exp(squeezed_log_p2n(param, half))
        return p
    raise InvalidParameter(f"未知的态族: {family}", "family", family)


def _geometric_sum(log_term, ratio_bound) -> Tuple[float, int]:
    """按块累加 exp(log_term(k))，直到 ratio_bound(k) < 1 且尾部上界可忽略"""
    total = 0.0
    k = 0
    block = 256
    while k < MAX_TERMS:
        idx = np.arange(k, k + block)
        terms = np.exp(log_term(idx))
        for offset, term in enumerate(terms):
            total += term
            j = k + offset
            rho = ratio_bound(j)
            if rho < 1.0 and term * rho / (1.0 - rho) <= TAIL_RTOL * total:
                return total, j + 1
        k += block
    raise InvalidParameter("级数在允许项数内未收敛", "terms", MAX_TERMS)


def fock_moment_oracle(family: str, param: float, omega: float) -> float:
    """Σ_n p_n e^{ωn}，发散时返回 inf"""
    if family == "coherent":
        a2 = float(param)
        if a2 == 0.0:
            return 1.0
        growth = a2 * math.exp(omega)
        total, _ = _geometric_sum(
            lambda n: coherent_log_pn(a2, n) + omega * n,
            lambda j: growth / (j + 1),
        )
        return total
    if family == "thermal":
        m = float(param)
        if m == 0.0:
            return 1.0
        rho = m / (m + 1.0) * math.exp(omega)
        if rho >= 1.0:
            return math.inf
        total, _ = _geometric_sum(lambda n: thermal_log_pn(m, n) + omega * n, lambda j: rho)
        return total
    if family == "squeezed":
        r = float(param)
        if r == 0.0:
            return 1.0
        rho = math.tanh(r) ** 2 * math.exp(2 * omega)
        if rho >= 1.0:
            return math.inf
        total, _ = _geometric_sum(lambda n: squeezed_log_p2n(r, n) + 2 * omega * n, lambda j: rho)
        return total
    raise InvalidParameter(f"未知的态族: {family}", "family", family)


def fock_mean_oracle(family: str, param: float, nmax: int = 4000) -> float:
    """Σ n p_n"""
    p = photon_distribution(family, param, nmax)
    return float(np.sum(np.arange(nmax) * p))
