# modules/optimizer/search.py
"""
无导数一维搜索：黄金分割与整数候选集上的精确 argmin
"""

import math
from typing import Callable, Iterable, Tuple

from ..core.constants import GOLDEN_MAX_ITER, GOLDEN_TOL
from ..core.exceptions import InvalidInterval

PHI_RATIO = 2.0 / (1.0 + math.sqrt(5.0))


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float = GOLDEN_TOL,
                   max_iter: int = GOLDEN_MAX_ITER) -> float:
    """
    单峰函数在 [a, b] 上的极小点

    单峰性由调用方保证。
    """
    a, b = float(a), float(b)
    if not a < b:
        raise InvalidInterval(f"区间无效: [{a}, {b}]", a, b)
    c = b - PHI_RATIO * (b - a)
    d = a + PHI_RATIO * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol * max(1.0, abs(a) + abs(b)) / 2:
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - PHI_RATIO * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + PHI_RATIO * (b - a)
            fd = f(d)
    return (a + b) / 2


def golden_section_min(f: Callable[[float], float], a: float, b: float, tol: float = GOLDEN_TOL) -> Tuple[float, float]:
    x = golden_section(f, a, b, tol)
    return x, f(x)


def integer_argmin(f: Callable[[int], float], candidates: Iterable[int]) -> Tuple[int, float]:
    """候选集上的精确最小，并列时取最小的整数"""
    best_x, best_v = None, math.inf
    for x in sorted(set(int(c) for c in candidates)):
        v = f(x)
        if v < best_v:
            best_x, best_v = x, v
    if best_x is None:
        raise InvalidInterval("候选集为空")
    return best_x, best_v
