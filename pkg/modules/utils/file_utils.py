# modules/utils/file_utils.py
"""
文件工具类

表格以 CSV 输出（12 位有效数字，末尾附拟合注释行），报告以 JSON 输出。
"""

import io
import json
import logging
import math
import os
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Union

import pandas as pd

from ..core.constants import CSV_FLOAT_FORMAT, FIT_FOOTER_PREFIX
from ..core.exceptions import FileOperationError


def _json_safe(value: Any) -> Any:
    """非有限浮点数写成 null"""
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


class FileUtils:
    """文件工具类"""

    @staticmethod
    def ensure_directory(path: Union[str, Path]) -> None:
        """确保目录存在"""
        if not path:
            return
        try:
            os.makedirs(path, exist_ok=True)
        except OSError as e:
            raise FileOperationError(f"创建目录失败: {e}", str(path), "mkdir")

    @staticmethod
    def to_json(data: Any) -> str:
        return json.dumps(_json_safe(data), ensure_ascii=False, indent=2, sort_keys=True)

    @staticmethod
    def table_to_csv(df: pd.DataFrame, footer: Optional[Dict[str, Any]] = None) -> str:
        """CSV 文本，footer 非空时追加 "# fit: {json}" 行"""
        buffer = io.StringIO()
        df.to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
        text = buffer.getvalue()
        if footer is not None:
            text += FIT_FOOTER_PREFIX + json.dumps(_json_safe(footer), sort_keys=True) + "\n"
        return text

    @staticmethod
    def write_text(text: str, filepath: Optional[Union[str, Path]] = None) -> None:
        """写入文件；未给出路径时写到标准输出"""
        if filepath is None:
            sys.stdout.write(text)
            sys.stdout.flush()
            return
        FileUtils.ensure_directory(os.path.dirname(str(filepath)))
        try:
            with open(filepath, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            raise FileOperationError(f"写入文件失败: {e}", str(filepath), "write")
        logging.info(f"Wrote {filepath}")

    @staticmethod
    def save_json(data: Any, filepath: Optional[Union[str, Path]] = None) -> None:
        """保存JSON文件"""
        FileUtils.write_text(FileUtils.to_json(data) + "\n", filepath)

    @staticmethod
    def load_json(filepath: Union[str, Path]) -> Any:
        """加载JSON文件"""
        try:
            with open(filepath, "r", encoding="utf-8") as f:
                return json.load(f)
        except OSError as e:
            raise FileOperationError(f"读取JSON文件失败: {e}", str(filepath), "read")

    @staticmethod
    def read_table_csv(filepath: Union[str, Path]) -> pd.DataFrame:
        """读取带拟合注释行的 CSV"""
        try:
            return pd.read_csv(filepath, comment="#")
        except OSError as e:
            raise FileOperationError(f"读取CSV文件失败: {e}", str(filepath), "read")
