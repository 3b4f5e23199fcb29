# modules/config/config_manager.py
"""
配置管理器

运行配置按层合并：内置缺省 < config/settings.yaml < --config 文件 < 环境变量 < 命令行参数。
配置文件为扁平的 YAML 映射。
"""

import logging
import os
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

import yaml

from ..bounds.large_count import LargeCount
from ..core.constants import (
    DEFAULT_DELTA,
    DEFAULT_ITERATIONS,
    DEFAULT_NBAR,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    SEED_ENV_VAR,
    ResourceModel,
    Tolerances,
)
from ..core.exceptions import ConfigurationError, FileOperationError, QDBoundsError

COMMANDS = ("bound", "figure", "gaussian", "verify", "config")
FIGURES = ("fig2", "fig3")
FORMATS = ("csv", "json")
DEFAULT_SETTINGS = Path(__file__).resolve().parents[2] / "config" / "settings.yaml"


@dataclass
class RunConfig:
    """一次命令运行的全部参数"""
    command: str = "bound"
    theorem: int = 1
    figure: str = "fig2"
    nbar: float = DEFAULT_NBAR
    delta: float = DEFAULT_DELTA
    epsilon: Optional[float] = None
    Omega: Optional[float] = None
    omega: Optional[float] = None
    N: Optional[str] = None
    grid_lo: Optional[float] = None
    grid_hi: Optional[float] = None
    grid_points: Optional[int] = None
    suite: str = "all"
    trials: Optional[int] = None
    samples: int = DEFAULT_SAMPLES
    iterations: int = DEFAULT_ITERATIONS
    seed: int = DEFAULT_SEED
    output: Optional[str] = None
    fmt: str = "csv"
    resource_model: str = ResourceModel.EXACT.value
    workers: int = 1
    log_file: Optional[str] = None
    tolerances: Tolerances = field(default_factory=Tolerances)

    def validate(self) -> "RunConfig":
        """验证配置参数"""
        if self.command not in COMMANDS:
            raise ConfigurationError(f"未知命令: {self.command}", "command")
        if self.theorem not in (1, 2):
            raise ConfigurationError("theorem 必须为 1 或 2", "theorem")
        if self.figure not in FIGURES:
            raise ConfigurationError(f"figure 必须为 {' 或 '.join(FIGURES)}", "figure")
        if not self.nbar >= 0:
            raise ConfigurationError("nbar 不能为负数", "nbar")
        if not 0.0 < self.delta < 1.0:
            raise ConfigurationError("delta 必须在 (0, 1) 内", "delta")
        if self.epsilon is not None and not 0.0 < self.epsilon < 1.0:
            raise ConfigurationError("epsilon 必须在 (0, 1) 内", "epsilon")
        if self.Omega is not None and not self.Omega > 1.0:
            raise ConfigurationError("Omega 必须大于 1", "Omega")
        if self.omega is not None and not self.omega > 0.0:
            raise ConfigurationError("omega 必须为正", "omega")
        if self.N is not None:
            try:
                LargeCount.parse(self.N)
            except QDBoundsError as e:
                raise ConfigurationError(f"N 无效: {e.message}", "N")
        if self.grid_points is not None and self.grid_points < 1:
            raise ConfigurationError("grid_points 必须大于0", "grid_points")
        if None not in (self.grid_lo, self.grid_hi) and self.grid_hi < self.grid_lo:
            raise ConfigurationError("grid_hi 不能小于 grid_lo", "grid_hi")
        if self.trials is not None and self.trials < 1:
            raise ConfigurationError("trials 必须大于0", "trials")
        if self.samples < 1:
            raise ConfigurationError("samples 必须大于0", "samples")
        if self.iterations < 0:
            raise ConfigurationError("iterations 不能为负数", "iterations")
        if self.seed < 0:
            raise ConfigurationError("seed 不能为负数", "seed")
        if self.fmt not in FORMATS:
            raise ConfigurationError(f"fmt 必须为 {' 或 '.join(FORMATS)}", "fmt")
        if self.resource_model not in {m.value for m in ResourceModel}:
            raise ConfigurationError(f"未知的资源模型: {self.resource_model}", "resource_model")
        if self.workers < 1:
            raise ConfigurationError("workers 必须大于0", "workers")
        return self

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["tolerances"] = self.tolerances.to_dict()
        return data

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RunConfig":
        return cls().merged(data)

    def merged(self, overrides: Mapping[str, Any]) -> "RunConfig":
        """返回叠加 overrides 后的新配置，值为 None 的键忽略"""
        known = {f.name: f for f in fields(self)}
        data = self.to_dict()
        for key, value in (overrides or {}).items():
            if key not in known:
                raise ConfigurationError(f"未知配置项: {key}", key)
            if value is None:
                continue
            if key == "tolerances":
                data[key] = {**data[key], **dict(value)}
            else:
                data[key] = _coerce(key, value)
        tolerances = Tolerances.from_dict(data.pop("tolerances"))
        return RunConfig(**data, tolerances=tolerances)

    def save(self, path: Union[str, Path]) -> None:
        try:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8") as f:
                f.write(self.dump())
        except OSError as e:
            raise FileOperationError(f"保存配置失败: {e}", str(path), "write")

    def dump(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=False, allow_unicode=True)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunConfig":
        return cls.from_dict(read_yaml(path))


_INT_FIELDS = {"theorem", "grid_points", "trials", "samples", "iterations", "seed", "workers"}
_FLOAT_FIELDS = {"nbar", "delta", "epsilon", "Omega", "omega", "grid_lo", "grid_hi"}


def _coerce(key: str, value: Any) -> Any:
    """按字段类型转换来自 YAML/环境变量/命令行的值"""
    try:
        if key in _INT_FIELDS:
            if isinstance(value, bool) or float(value) != int(float(value)):
                raise ValueError(value)
            return int(float(value))
        if key in _FLOAT_FIELDS:
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"配置项 {key} 的值无效: {value!r}", key)


def read_yaml(path: Union[str, Path]) -> Dict[str, Any]:
    """读取扁平 YAML 映射，空文件视为空映射"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except OSError as e:
        raise FileOperationError(f"读取配置文件失败: {e}", str(path), "read")
    except yaml.YAMLError as e:
        raise ConfigurationError(f"配置文件格式错误: {e}")
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"配置文件必须是键值映射: {path}")
    return data


class ConfigManager:
    """按优先级合并各层配置"""

    def __init__(self, settings_path: Optional[Union[str, Path]] = None):
        self.logger = logging.getLogger(self.__class__.__name__)
        self.settings_path = Path(settings_path) if settings_path else DEFAULT_SETTINGS

    def _settings_layer(self) -> Dict[str, Any]:
        if not self.settings_path.exists():
            self.logger.info(f"Settings file not found, using built-in defaults: {self.settings_path}")
            return {}
        return read_yaml(self.settings_path)

    @staticmethod
    def _environment_layer(environ: Mapping[str, str]) -> Dict[str, Any]:
        raw = environ.get(SEED_ENV_VAR)
        if raw is None or raw.strip() == "":
            return {}
        try:
            return {"seed": int(raw)}
        except ValueError:
            raise ConfigurationError(f"环境变量 {SEED_ENV_VAR} 必须是整数: {raw!r}", SEED_ENV_VAR)

    def build(self, overrides: Optional[Mapping[str, Any]] = None, config_file: Optional[str] = None,
              environ: Optional[Mapping[str, str]] = None) -> RunConfig:
        """
        合并全部配置层并验证

        Args:
            overrides: 命令行参数，None 值表示未指定
            config_file: --config 指定的文件
            environ: 缺省取 os.environ
        """
        config = RunConfig().merged(self._settings_layer())
        if config_file:
            config = config.merged(read_yaml(config_file))
            self.logger.info(f"Loaded config file: {config_file}")
        config = config.merged(self._environment_layer(os.environ if environ is None else environ))
        config = config.merged(overrides or {})
        return config.validate()
