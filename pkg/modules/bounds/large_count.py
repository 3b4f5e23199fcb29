# modules/bounds/large_count.py
"""
大数 N 的对数域表示

N 以 (尾数, 十进制指数) 保存，所有幂与对数在对数域中计算。
"""

import math
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Union

from ..core.exceptions import InvalidParameter

LN10 = math.log(10.0)


@dataclass(frozen=True)
class LargeCount:
    """N = mantissa · 10^exponent，1 ≤ mantissa < 10"""
    mantissa: float
    exponent: int

    def __post_init__(self):
        if not self.mantissa > 0 or not math.isfinite(self.mantissa):
            raise InvalidParameter("N 的尾数必须为正的有限数", "N", self.mantissa)

    @classmethod
    def parse(cls, text: str) -> "LargeCount":
        """按十进制科学计数法解析，例如 "1e60"、"2.5E+29" """
        try:
            value = Decimal(str(text).strip())
        except InvalidOperation:
            raise InvalidParameter(f"无法解析的 N: {text}", "N", text)
        if not value.is_finite() or value <= 0:
            raise InvalidParameter(f"N 必须为正的有限数: {text}", "N", text)
        exponent = value.adjusted()
        mantissa = float(value.scaleb(-exponent))
        return cls(mantissa, exponent)

    @classmethod
    def from_value(cls, value: Union["LargeCount", float, int, str]) -> "LargeCount":
        if isinstance(value, LargeCount):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, int):
            return cls.parse(str(value))
        return cls.parse(repr(float(value)))

    @classmethod
    def from_log10(cls, log10_value: float) -> "LargeCount":
        exponent = math.floor(log10_value)
        return cls(10.0 ** (log10_value - exponent), exponent)

    def ln(self) -> float:
        return math.log(self.mantissa) + self.exponent * LN10

    def log10(self) -> float:
        return math.log10(self.mantissa) + self.exponent

    def to_float(self) -> float:
        """超出浮点范围时返回 inf"""
        try:
            return self.mantissa * 10.0 ** self.exponent
        except OverflowError:
            return math.inf

    def __str__(self) -> str:
        return f"{self.mantissa:.12g}e{self.exponent}"


CountLike = Union[LargeCount, float, int, str]


def ln_count(n: CountLike) -> float:
    """ln N，N ≥ 1"""
    if isinstance(n, (float, int)) and not isinstance(n, bool):
        if not n > 0 or not math.isfinite(n):
            raise InvalidParameter("N 必须为正的有限数", "N", n)
        value = math.log(n)
    else:
        value = LargeCount.from_value(n).ln()
    if value < 0:
        raise InvalidParameter("N 必须不小于 1", "N", n)
    return value
