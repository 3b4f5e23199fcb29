"""
工具模块

提供文件输出相关的实用工具
"""

from .file_utils import FileUtils

__all__ = ["FileUtils"]
