# modules/fock_core/operators.py
"""
截断 Fock 空间线性代数

稠密复矩阵表示的算符与态，以及迹范数、偏迹、冯·诺依曼熵与互信息。
所有对象构造后不可变，所有函数均为纯函数。
"""

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..core.constants import EIGEN_CLIP_TOL, HERMITIAN_TOL, TRACE_TOL, EntropyBase
from ..core.exceptions import InvalidOperator, NotAState, ShapeError, validate_positive_int

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FockOperator:
    """截断 Fock 空间上的算符，dims 记录张量积结构"""
    entries: np.ndarray
    dims: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ShapeError("算符必须是方阵", actual=entries.shape)
        dims = tuple(int(d) for d in self.dims) or (entries.shape[0],)
        if int(np.prod(dims)) != entries.shape[0] or min(dims) < 1:
            raise ShapeError("子系统维数与矩阵大小不符", expected=dims, actual=entries.shape)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def __matmul__(self, other: "FockOperator") -> "FockOperator":
        return FockOperator(self.entries @ as_matrix(other), self.dims)


@dataclass(frozen=True, eq=False)
class FockState:
    """
    密度矩阵

    normalized=False 表示迹可以刻意小于 1（截断态保留解析系数）。
    """
    operator: FockOperator
    normalized: bool = True

    @classmethod
    def from_matrix(cls, rho: np.ndarray, dims: Sequence[int] = (), normalized: bool = True,
                    check: bool = True) -> "FockState":
        op = FockOperator(rho, tuple(dims))
        if check:
            validate_state(op.entries)
        return cls(op, normalized)

    @classmethod
    def from_ket(cls, ket: np.ndarray, dims: Sequence[int] = (), normalized: bool = True) -> "FockState":
        ket = np.asarray(ket, dtype=complex).reshape(-1)
        return cls(FockOperator(np.outer(ket, ket.conj()), tuple(dims)), normalized)

    @property
    def matrix(self) -> np.ndarray:
        return self.operator.entries

    @property
    def dims(self) -> Tuple[int, ...]:
        return self.operator.dims

    @property
    def dim(self) -> int:
        return self.operator.dim

    def trace(self) -> float:
        return float(np.real(self.operator.trace()))


OperatorLike = Union[FockOperator, FockState, np.ndarray]


def as_matrix(x: OperatorLike) -> np.ndarray:
    """取出底层矩阵"""
    if isinstance(x, FockState):
        return x.matrix
    if isinstance(x, FockOperator):
        return x.entries
    return np.asarray(x, dtype=complex)


def _dims_of(x: OperatorLike) -> Tuple[int, ...]:
    if isinstance(x, (FockState, FockOperator)):
        return x.dims
    return (np.asarray(x).shape[0],)


def _require_finite(x: np.ndarray) -> None:
    if not np.all(np.isfinite(x)):
        raise InvalidOperator("算符包含非有限元素", shape=x.shape)


def is_hermitian(x: OperatorLike, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(x)
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def validate_state(rho: OperatorLike, tol: float = EIGEN_CLIP_TOL) -> np.ndarray:
    """检查厄米、半正定且迹不超过 1，返回本征值"""
    m = as_matrix(rho)
    _require_finite(m)
    if not is_hermitian(m):
        raise NotAState("密度矩阵不是厄米的")
    eigenvalues = np.linalg.eigvalsh(m)
    if eigenvalues.size and eigenvalues[0] < -tol:
        raise NotAState("密度矩阵存在负本征值", min_eigenvalue=eigenvalues[0])
    if np.trace(m).real > 1.0 + TRACE_TOL:
        raise NotAState("密度矩阵的迹大于 1")
    return eigenvalues


def is_state(rho: OperatorLike, tol: float = EIGEN_CLIP_TOL) -> bool:
    try:
        validate_state(rho, tol)
    except NotAState:
        return False
    return True


def trace_norm(x: OperatorLike) -> float:
    """迹范数：奇异值之和，厄米输入走本征值分解"""
    m = as_matrix(x)
    _require_finite(m)
    if is_hermitian(m):
        return float(np.sum(np.abs(np.linalg.eigvalsh((m + m.conj().T) / 2))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def _check_bipartite(m: np.ndarray, dims: Sequence[int]) -> Tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise ShapeError("子系统维数之积与矩阵大小不符", expected=dims, actual=m.shape)
    return dims


def partial_trace(x: OperatorLike, dims: Optional[Sequence[int]] = None, keep: Union[int, Sequence[int]] = 0) -> FockOperator:
    """
    偏迹

    Args:
        x: 多体算符
        dims: 各子系统维数，缺省取算符自带的 dims
        keep: 保留的子系统编号（整数或序列），0 表示 A
    """
    m = as_matrix(x)
    dims = _check_bipartite(m, dims if dims is not None else _dims_of(x))
    keep = sorted({keep} if isinstance(keep, (int, np.integer)) else set(keep))
    n = len(dims)
    if any(k < 0 or k >= n for k in keep):
        raise ShapeError("保留的子系统编号越界", expected=n, actual=keep)

    tensor = m.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n:2 * n])
    for i in range(n):
        if i not in keep:
            col[i] = row[i]
    out = "".join(row[i] for i in keep) + "".join(col[i] for i in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, tensor)
    kept_dims = tuple(dims[i] for i in keep)
    size = int(np.prod(kept_dims))
    return FockOperator(reduced.reshape(size, size), kept_dims)


def partial_transpose(x: OperatorLike, dims: Optional[Sequence[int]] = None, subsystem: int = 1) -> FockOperator:
    """对指定子系统做部分转置"""
    m = as_matrix(x)
    dims = _check_bipartite(m, dims if dims is not None else _dims_of(x))
    n = len(dims)
    tensor = m.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[n + subsystem] = axes[n + subsystem], axes[subsystem]
    return FockOperator(tensor.transpose(axes).reshape(m.shape), dims)


def clipped_eigenvalues(rho: OperatorLike, tol: float = EIGEN_CLIP_TOL) -> np.ndarray:
    """本征值落在 (−tol, 0) 时截为 0，更负则报错"""
    m = as_matrix(rho)
    _require_finite(m)
    eigenvalues = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if eigenvalues.size and eigenvalues[0] < -tol:
        raise NotAState("存在显著为负的本征值", min_eigenvalue=eigenvalues[0])
    return np.clip(eigenvalues, 0.0, None)


def von_neumann_entropy(rho: OperatorLike, base: Union[EntropyBase, str] = EntropyBase.BITS) -> float:
    """冯·诺依曼熵，0·log 0 := 0"""
    base = EntropyBase(base)
    eigenvalues = clipped_eigenvalues(rho)
    positive = eigenvalues[eigenvalues > 0]
    nats = float(-np.sum(positive * np.log(positive)))
    nats = max(nats, 0.0)
    return nats / np.log(2.0) if base is EntropyBase.BITS else nats


def mutual_information(rho_ab: OperatorLike, dims: Optional[Sequence[int]] = None) -> float:
    """I(A:B) = S(A) + S(B) − S(AB)，单位比特"""
    m = as_matrix(rho_ab)
    dims = _check_bipartite(m, dims if dims is not None else _dims_of(rho_ab))
    if len(dims) != 2:
        raise ShapeError("互信息需要两体系统", expected=2, actual=len(dims))
    s_a = von_neumann_entropy(partial_trace(m, dims, keep=0))
    s_b = von_neumann_entropy(partial_trace(m, dims, keep=1))
    return s_a + s_b - von_neumann_entropy(m)


def expectation(rho: OperatorLike, observable: OperatorLike) -> float:
    """Tr(ρ X) 的实部"""
    return float(np.real(np.trace(as_matrix(rho) @ as_matrix(observable))))


def kron(*ops: OperatorLike) -> FockOperator:
    """张量积，保留 dims 结构"""
    matrix = np.array([[1.0 + 0j]])
    dims: Tuple[int, ...] = ()
    for op in ops:
        matrix = np.kron(matrix, as_matrix(op))
        dims = dims + _dims_of(op)
    return FockOperator(matrix, dims)


# ---- 对角算符 ----

def number_operator(dim: int) -> FockOperator:
    """n̂ = Σ n |n⟩⟨n|"""
    dim = validate_positive_int(dim, "dim")
    return FockOperator(np.diag(np.arange(dim, dtype=float)).astype(complex))


def projector(d: int, dim: int) -> FockOperator:
    """Π_d = Σ_{i<d} |i⟩⟨i|"""
    dim = validate_positive_int(dim, "dim")
    if not 0 <= d <= dim:
        raise ShapeError("截断维数超出空间维数", expected=dim, actual=d)
    diag = np.zeros(dim)
    diag[:d] = 1.0
    return FockOperator(np.diag(diag).astype(complex))


def exp_number_operator(omega: float, dim: int) -> FockOperator:
    """e^{ω n̂}"""
    dim = validate_positive_int(dim, "dim")
    return FockOperator(np.diag(np.exp(omega * np.arange(dim))).astype(complex))


def fock_cutoff_gap(rho: OperatorLike, d: int, dims: Optional[Sequence[int]] = None) -> float:
    """
    Fock 截断引理的余量

    返回 Tr(Π_d ρ_A) − [1 − (⟨n̂⟩_ρ − ⟨n̂⟩_{ρ_T})/d]，对合法态非负。
    """
    m = as_matrix(rho)
    dims = _check_bipartite(m, dims if dims is not None else _dims_of(rho))
    rho_a = partial_trace(m, dims, keep=0).entries
    populations = np.real(np.diag(rho_a))
    n = np.arange(dims[0])
    mean_full = float(np.sum(n * populations))
    mean_trunc = float(np.sum(n[:d] * populations[:d]))
    kept = float(np.sum(populations[:d]))
    trace = float(np.sum(populations))
    return kept - (trace - (mean_full - mean_trunc) / d)


# ---- 随机采样 ----

def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """高斯随机向量归一化得到的 Haar 纯态"""
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return vec / np.linalg.norm(vec)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> np.ndarray:
    """Ginibre 系综随机密度矩阵"""
    rank = rank or dim
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_hermitian(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + g.conj().T) / 2
