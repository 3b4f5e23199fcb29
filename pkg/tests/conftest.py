# tests/conftest.py
"""共享的测试夹具"""

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def settings_file(tmp_path):
    """只含少量键的 settings.yaml，避免依赖仓库内的缺省文件"""
    path = tmp_path / "settings.yaml"
    path.write_text("nbar: 1.0\ndelta: 0.01\nseed: 1\n", encoding="utf-8")
    return path
