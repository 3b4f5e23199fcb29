# modules/optimizer/power_law.py
"""
幂律拟合 bound·δ = β·N^(−1/α)

ln(δ·bound) 对 ln N 做线性回归：斜率 −1/α，截距 ln β。
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..bounds.large_count import CountLike, ln_count
from ..core.exceptions import InvalidData, validate_open_unit


@dataclass(frozen=True)
class PowerLawFit:
    beta: float
    alpha: float
    residual: float

    def to_dict(self) -> dict:
        return {"beta": self.beta, "alpha": self.alpha, "residual": self.residual}


def power_law_fit(rows: Sequence[Tuple[CountLike, float]], delta: float) -> PowerLawFit:
    """
    Args:
        rows: (N, bound) 序列，bound 已除以 δ
        delta: 置信参数
    """
    delta = validate_open_unit(delta, "delta")
    if len(rows) < 3:
        raise InvalidData(f"拟合至少需要 3 行数据，当前 {len(rows)}")
    x, y = [], []
    for i, (n, bound) in enumerate(rows):
        if not bound > 0 or not math.isfinite(bound):
            raise InvalidData("界限值必须为正的有限数", row_index=i, value=bound)
        x.append(ln_count(n))
        y.append(math.log(delta * bound))
    x, y = np.asarray(x), np.asarray(y)
    if np.ptp(x) == 0.0:
        raise InvalidData("所有 N 相同，无法拟合")
    slope, intercept = np.polyfit(x, y, 1)
    if not slope < 0:
        raise InvalidData(f"拟合斜率非负 ({slope:.6g})，不是衰减幂律")
    residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return PowerLawFit(beta=float(math.exp(intercept)), alpha=float(-1.0 / slope), residual=residual)
