# modules/core/__init__.py
"""
核心模块

提供项目的异常、常量与并发执行器
"""

from .constants import (
    DEFAULT_SEED,
    DEFAULT_TOLERANCES,
    PROJECT_NAME,
    SEED_ENV_VAR,
    VERSION,
    EntropyBase,
    FormulaTag,
    GibbsMode,
    ResourceModel,
    Theorem,
    Tolerances,
)
from .exceptions import (
    EXIT_COUNTEREXAMPLE,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    ConfigurationError,
    DomainError,
    DomainTooSmall,
    FileOperationError,
    FragmentIndexError,
    InvalidBudget,
    InvalidData,
    InvalidInterval,
    InvalidOperator,
    InvalidParameter,
    InvalidPOVM,
    NoFeasiblePoint,
    NotAState,
    QDBoundsError,
    SamplerError,
    ShapeError,
    with_exit_code,
)
from .parallel import ParallelRunner, TaskResult

__all__ = [
    # Constants
    'VERSION', 'PROJECT_NAME', 'SEED_ENV_VAR', 'DEFAULT_SEED', 'DEFAULT_TOLERANCES',
    'EntropyBase', 'FormulaTag', 'GibbsMode', 'ResourceModel', 'Theorem', 'Tolerances',

    # Exceptions
    'QDBoundsError', 'InvalidOperator', 'ShapeError', 'InvalidParameter', 'NotAState',
    'InvalidPOVM', 'FragmentIndexError', 'DomainError', 'DomainTooSmall', 'InvalidInterval',
    'NoFeasiblePoint', 'InvalidData', 'SamplerError', 'InvalidBudget',
    'ConfigurationError', 'FileOperationError', 'with_exit_code',
    'EXIT_OK', 'EXIT_COUNTEREXAMPLE', 'EXIT_USAGE', 'EXIT_IO',

    # Concurrency
    'ParallelRunner', 'TaskResult',
]
