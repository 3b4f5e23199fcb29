"""
配置管理模块

负责运行配置的分层合并与 YAML 读写
"""

from .config_manager import ConfigManager, RunConfig, read_yaml

__all__ = ["ConfigManager", "RunConfig", "read_yaml"]
