# modules/bounds/lambert.py
"""
Lambert W 函数主支

Halley 迭代，初值取 ln z − ln ln z，或在支点 −1/e 附近取级数 √(2ez + 2) − 1。
"""

import math

from ..core.exceptions import DomainError

_INV_E = math.exp(-1.0)
_MAX_ITER = 100


def _halley(z: float, w: float) -> float:
    for _ in range(_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0:
            break
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        if denom == 0.0:
            break
        step = f / denom
        w -= step
        if abs(step) <= 0.7e-16 * (2.0 + abs(w)):
            break
    return w


def lambert_w0(x: float) -> float:
    """W₀(x)，x ≥ −1/e"""
    x = float(x)
    if math.isnan(x) or x < -_INV_E:
        raise DomainError(f"Lambert W 主支要求 x ≥ −1/e，当前 {x}", x)
    if x == 0.0:
        return 0.0
    if x == -_INV_E:
        return -1.0
    if math.isinf(x):
        return math.inf
    if x > 3.0:
        w = math.log(x) - math.log(math.log(x))
    elif x < -0.3:
        w = math.sqrt(2.0 * math.e * x + 2.0) - 1.0
    else:
        w = math.log1p(x) * (1.0 - math.log1p(math.log1p(x)) / (2.0 + math.log1p(x))) if x > -0.25 else x
    return _halley(x, w)


def lambert_w0_exp(log_x: float) -> float:
    """
    W₀(e^L)，适用于 e^L 溢出的大 L

    在对数形式 w + ln w = L 上做牛顿迭代。
    """
    log_x = float(log_x)
    if log_x < 700.0:
        return lambert_w0(math.exp(log_x))
    w = log_x - math.log(log_x)
    for _ in range(_MAX_ITER):
        f = w + math.log(w) - log_x
        step = f / (1.0 + 1.0 / w)
        w -= step
        if abs(step) <= 1e-16 * abs(w):
            break
    return w
