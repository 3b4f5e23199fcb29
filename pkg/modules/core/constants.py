# modules/core/constants.py
"""
常量定义模块

定义项目中使用的所有常量
"""

from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict

# 版本信息
VERSION = "1.0.1"
PROJECT_NAME = "qd-objectivity-bounds"

# 环境变量
SEED_ENV_VAR = "QDBOUNDS_SEED"
DEFAULT_SEED = 1

# 数值容差
INEQUALITY_TOL = 1e-9
IDENTITY_TOL = 1e-10
HERMITIAN_TOL = 1e-12
EIGEN_CLIP_TOL = 1e-10
TRACE_TOL = 1e-12

# 估计器默认预算
DEFAULT_SAMPLES = 512
DEFAULT_ITERATIONS = 200
ESTIMATE_CAP = 2.0

# 验证套件
DEFAULT_TRIALS = 100
MAX_VERIFY_DIM = 5
CJ_OMEGAS = (0.3, 1.0, 2.0)
CJ_MIN_EXTRA_LEVELS = 20

# 图表网格 (十进制指数)
FIG2_GRID = (12, 60, 13)
FIG3_GRID = (29, 60, 13)
DEFAULT_DELTA = 0.01
DEFAULT_NBAR = 1.0

# 定理二参数扫描
OMEGA_FACTORS = (1.01, 1.1, 1.5, 2.0, 4.0, 10.0)
EPSILON_GRID = (0.02, 0.98, 25)
OMEGA_SCAN_POINTS = 48

# 定理一整数 d 扫描
D_COARSE_POINTS = 200
M_NEIGHBORHOOD = 2

# 黄金分割
GOLDEN_TOL = 1e-10
GOLDEN_MAX_ITER = 500

# 输出格式
CSV_FLOAT_FORMAT = "%.12g"
FIT_FOOTER_PREFIX = "# fit: "

# 日志
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Theorem(Enum):
    """界限定理编号"""
    ENERGY = 1
    EXP_CUTOFF = 2


class FormulaTag(Enum):
    """界限数值来源"""
    ANALYTIC = "analytic"
    NUMERIC = "numeric"


class ResourceModel(Enum):
    """高斯资源集合的 (ω, Ω) 选取方式"""
    EXACT = "exact"
    CERTIFICATE = "certificate"


class GibbsMode(Enum):
    """截断吉布斯态的归一化方式"""
    EXACT_TAIL = "exact-tail"
    RENORMALIZED = "renormalized"


class EntropyBase(Enum):
    """熵的单位"""
    BITS = "bits"
    NATS = "nats"


@dataclass(frozen=True)
class Tolerances:
    """集中管理的数值容差"""
    inequality: float = INEQUALITY_TOL
    identity: float = IDENTITY_TOL
    hermitian: float = HERMITIAN_TOL
    eigen_clip: float = EIGEN_CLIP_TOL

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, float]) -> "Tolerances":
        known = {k: float(v) for k, v in (data or {}).items() if k in cls.__dataclass_fields__}
        return cls(**known)


DEFAULT_TOLERANCES = Tolerances()
