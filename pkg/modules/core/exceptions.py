# modules/core/exceptions.py
"""
异常定义模块

定义项目中使用的所有自定义异常类
"""

import logging
from functools import wraps
from typing import Any, Optional


class QDBoundsError(Exception):
    """界限计算与验证相关异常的基类"""

    def __init__(self, message: str, error_code: Optional[str] = None, details: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.details = details or {}

    def __str__(self):
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


class InvalidOperator(QDBoundsError):
    """算符包含非有限元素"""

    def __init__(self, message: str, shape: Optional[tuple] = None):
        super().__init__(message, "INVALID_OPERATOR")
        if shape is not None:
            self.details["shape"] = list(shape)


class ShapeError(QDBoundsError, ValueError):
    """维度不匹配"""

    def __init__(self, message: str, expected: Optional[Any] = None, actual: Optional[Any] = None):
        super().__init__(message, "SHAPE_ERROR")
        if expected is not None:
            self.details["expected"] = str(expected)
        if actual is not None:
            self.details["actual"] = str(actual)


class InvalidParameter(QDBoundsError, ValueError):
    """参数超出允许范围"""

    def __init__(self, message: str, name: Optional[str] = None, value: Optional[Any] = None):
        super().__init__(message, "INVALID_PARAMETER")
        self.name = name
        self.value = value
        if name:
            self.details["name"] = name
        if value is not None:
            self.details["value"] = str(value)


class NotAState(QDBoundsError):
    """不是合法的密度矩阵"""

    def __init__(self, message: str, min_eigenvalue: Optional[float] = None):
        super().__init__(message, "NOT_A_STATE")
        if min_eigenvalue is not None:
            self.details["min_eigenvalue"] = float(min_eigenvalue)


class InvalidPOVM(QDBoundsError):
    """POVM 不完备或效应算符非正"""

    def __init__(self, message: str, residual: Optional[float] = None, fragment: Optional[int] = None):
        super().__init__(message, "INVALID_POVM")
        if residual is not None:
            self.details["residual"] = float(residual)
        if fragment is not None:
            self.details["fragment"] = fragment


class FragmentIndexError(QDBoundsError, IndexError):
    """碎片编号越界"""

    def __init__(self, message: str, index: Optional[int] = None, count: Optional[int] = None):
        super().__init__(message, "FRAGMENT_INDEX")
        if index is not None:
            self.details["index"] = index
        if count is not None:
            self.details["count"] = count


class DomainError(QDBoundsError, ValueError):
    """函数自变量不在定义域内"""

    def __init__(self, message: str, value: Optional[float] = None):
        super().__init__(message, "DOMAIN_ERROR")
        if value is not None:
            self.details["value"] = float(value)


class DomainTooSmall(QDBoundsError):
    """闭式界限要求 γ₂N > 1"""

    def __init__(self, message: str, gamma2_n: Optional[float] = None):
        super().__init__(message, "DOMAIN_TOO_SMALL")
        if gamma2_n is not None:
            self.details["gamma2_N"] = float(gamma2_n)


class InvalidInterval(QDBoundsError):
    """搜索区间无效"""

    def __init__(self, message: str, a: Optional[float] = None, b: Optional[float] = None):
        super().__init__(message, "INVALID_INTERVAL")
        if a is not None:
            self.details["a"] = float(a)
        if b is not None:
            self.details["b"] = float(b)


class NoFeasiblePoint(QDBoundsError):
    """优化过程中没有可行点"""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message, "NO_FEASIBLE_POINT")
        if stage:
            self.details["stage"] = stage


class InvalidData(QDBoundsError):
    """拟合数据无效"""

    def __init__(self, message: str, row_index: Optional[int] = None, value: Optional[Any] = None):
        super().__init__(message, "INVALID_DATA")
        if row_index is not None:
            self.details["row_index"] = row_index
        if value is not None:
            self.details["value"] = str(value)


class SamplerError(QDBoundsError):
    """拒绝采样耗尽"""

    def __init__(self, message: str, attempts: Optional[int] = None):
        super().__init__(message, "SAMPLER_ERROR")
        if attempts is not None:
            self.details["attempts"] = attempts


class InvalidBudget(QDBoundsError):
    """估计器预算无效"""

    def __init__(self, message: str, samples: Optional[int] = None, iterations: Optional[int] = None):
        super().__init__(message, "INVALID_BUDGET")
        if samples is not None:
            self.details["samples"] = samples
        if iterations is not None:
            self.details["iterations"] = iterations


class ConfigurationError(QDBoundsError):
    """配置异常"""

    def __init__(self, message: str, config_key: Optional[str] = None):
        super().__init__(message, "CONFIG_ERROR")
        self.config_key = config_key
        if config_key:
            self.details["config_key"] = config_key


class FileOperationError(QDBoundsError):
    """文件操作异常"""

    def __init__(self, message: str, file_path: Optional[str] = None, operation: Optional[str] = None):
        super().__init__(message, "FILE_ERROR")
        self.file_path = file_path
        self.operation = operation
        if file_path:
            self.details["file_path"] = file_path
        if operation:
            self.details["operation"] = operation


# 命令行退出码
EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_IO = 3


def with_exit_code(func):
    """
    统一的命令行错误处理装饰器

    将业务异常映射为稳定的退出码：参数错误 2，I/O 错误 3。
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except FileOperationError as e:
            logging.error(f"I/O failure in {func.__name__}: {e}")
            return EXIT_IO
        except OSError as e:
            logging.error(f"I/O failure in {func.__name__}: {e}")
            return EXIT_IO
        except QDBoundsError as e:
            logging.error(f"Invalid parameters in {func.__name__}: {e}")
            return EXIT_USAGE
    return wrapper


# 验证函数
def validate_positive_int(value: Any, name: str = "值") -> int:
    """验证正整数"""
    if isinstance(value, bool):
        raise InvalidParameter(f"{name}必须是正整数，当前值: {value}", name, value)
    try:
        int_value = int(value)
    except (ValueError, TypeError):
        raise InvalidParameter(f"{name}必须是有效的整数，当前值: {value}", name, value)
    if int_value != value or int_value <= 0:
        raise InvalidParameter(f"{name}必须是正整数，当前值: {value}", name, value)
    return int_value


def validate_positive_float(value: Any, name: str = "值") -> float:
    """验证正的有限实数"""
    try:
        float_value = float(value)
    except (ValueError, TypeError):
        raise InvalidParameter(f"{name}必须是有效的数值，当前值: {value}", name, value)
    if not float_value > 0 or float_value == float("inf"):
        raise InvalidParameter(f"{name}必须为正的有限数，当前值: {value}", name, value)
    return float_value


def validate_non_negative_float(value: Any, name: str = "值") -> float:
    """验证非负浮点数"""
    try:
        float_value = float(value)
    except (ValueError, TypeError):
        raise InvalidParameter(f"{name}必须是有效的数值，当前值: {value}", name, value)
    if not float_value >= 0 or float_value == float("inf"):
        raise InvalidParameter(f"{name}不能为负数，当前值: {value}", name, value)
    return float_value


def validate_open_unit(value: Any, name: str = "值") -> float:
    """验证 (0, 1) 开区间内的实数"""
    try:
        float_value = float(value)
    except (ValueError, TypeError):
        raise InvalidParameter(f"{name}必须是有效的数值，当前值: {value}", name, value)
    if not 0.0 < float_value < 1.0:
        raise InvalidParameter(f"{name}必须在 (0, 1) 区间内，当前值: {value}", name, value)
    return float_value
