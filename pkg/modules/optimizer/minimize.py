# modules/optimizer/minimize.py
"""
ζ 表达式的数值最小化与图表扫描

定理一：对整数 d ≥ 2 先做对数网格粗扫再局部整数细化，随后在 m_opt 附近 ±2 扫描整数 m。
定理二：对 (ω, Ω) 做外层扫描与黄金分割细化，内层整数 d 以 d_min 为种子。
所有优化器确定性运行，无随机性。
"""

import functools
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..bounds.large_count import CountLike, LargeCount, ln_count
from ..bounds.theorem_one import _zeta_log as thm1_zeta_log
from ..bounds.theorem_one import BoundResult, Thm1Query, objective_log, thm1_analytic, thm1_zeta
from ..bounds.theorem_two import Thm2Query, thm2_closed, thm2_dmin, thm2_zeta, zeta_evaluator
from ..core.constants import (
    D_COARSE_POINTS,
    EPSILON_GRID,
    FormulaTag,
    M_NEIGHBORHOOD,
    OMEGA_FACTORS,
    OMEGA_SCAN_POINTS,
    ResourceModel,
    Theorem,
)
from ..core.exceptions import DomainTooSmall, InvalidParameter, NoFeasiblePoint, QDBoundsError
from ..core.parallel import ParallelRunner
from ..gaussian.gaussian_state import cutoff_params, omega_max, worst_case_moment
from .search import golden_section, integer_argmin

logger = logging.getLogger(__name__)

REFINE_TOL = 1e-7


@dataclass(frozen=True)
class Thm1Minimum:
    d: int
    m: int
    zeta: float
    zeta_f: float
    zeta_m: float
    d_real: float


@dataclass(frozen=True)
class Thm2Minimum:
    epsilon: Optional[float]
    omega: float
    Omega: float
    d: int
    zeta: float
    d_real: float


@dataclass(frozen=True)
class SweepRow:
    """图表曲线上的一个 (N, bound) 样本"""
    N: LargeCount
    bound_analytic: float
    bound_numeric: float
    d: int
    m: Optional[int] = None
    epsilon: Optional[float] = None
    omega: Optional[float] = None
    Omega: Optional[float] = None


def log_grid(lo_exp: float, hi_exp: float, points: int) -> List[LargeCount]:
    """10^lo … 10^hi 之间的对数等距网格"""
    if points < 1 or hi_exp < lo_exp:
        raise InvalidParameter("网格参数无效", "grid", (lo_exp, hi_exp, points))
    if points == 1:
        return [LargeCount.from_log10(lo_exp)]
    return [LargeCount.from_log10(x) for x in np.linspace(lo_exp, hi_exp, points)]


def _refine_integer(f: Callable[[int], float], center: float, lower: int, width: int) -> Tuple[int, float]:
    """在 center 附近的整数窗口内取最小，最优点落在窗口边缘时扩大窗口"""
    while True:
        lo = max(lower, int(math.floor(center)) - width)
        hi = max(lo, int(math.ceil(center)) + width)
        best, value = integer_argmin(f, range(lo, hi + 1))
        if (best > lo or lo == lower) and best < hi:
            return best, value
        center = best
        width *= 2


# ---- 定理一 ----

def _integer_m(d: int, nbar: float, ln_n: float) -> Tuple[int, float]:
    """固定 d 时在连续最优 m 附近 ±M_NEIGHBORHOOD 内取整数 m，且 1 ≤ m ≤ N"""
    m_real = objective_log(float(d), nbar, ln_n)[1]
    m_cap = math.floor(math.exp(ln_n) * (1 + 1e-12)) if ln_n < 690.0 else math.inf
    center = int(round(m_real)) if m_real < 1e300 else int(m_real)
    candidates = [m for m in range(center - M_NEIGHBORHOOD, center + M_NEIGHBORHOOD + 1) if 1 <= m <= m_cap]
    if not candidates:
        candidates = [max(1, min(center, int(m_cap)))]
    return integer_argmin(lambda m: thm1_zeta_log(float(d), float(m), nbar, ln_n), candidates)


def minimize_thm1(nbar: float, N: CountLike) -> Thm1Minimum:
    """最小化 ζ(d, m)，返回整数 (d*, m*) 与 ζ*"""
    ln_n = ln_count(N)
    nbar = float(nbar)

    def objective(d: float) -> float:
        return objective_log(d, nbar, ln_n)[0]

    d_hi = max(16.0, (1.0 + nbar) * math.exp(ln_n / 5.0 + 5.0))
    grid = np.geomspace(2.0, d_hi, D_COARSE_POINTS)
    values = [objective(d) for d in grid]
    i = int(np.argmin(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    if hi > lo:
        ln_d = golden_section(lambda x: objective(math.exp(x)), math.log(lo), math.log(hi), REFINE_TOL)
        d_real = max(2.0, math.exp(ln_d))
    else:
        d_real = float(lo)
    d_star, zeta_f = _refine_integer(lambda d: objective(float(d)), d_real, 2, 2)

    m_star, zeta_m = _integer_m(d_star, nbar, ln_n)

    zeta = min(zeta_f, zeta_m)
    logger.debug(f"thm1 N=exp({ln_n:.4g}): d*={d_star}, m*={m_star}, zeta*={zeta:.6g}")
    return Thm1Minimum(d=d_star, m=m_star, zeta=zeta, zeta_f=zeta_f, zeta_m=zeta_m, d_real=d_real)


# ---- 定理二 ----

def minimize_thm2_d(omega: float, Omega: float, N: CountLike) -> Tuple[int, float, float]:
    """固定 (ω, Ω) 时的整数 d 最小化，返回 (d*, ζ*, d_min)"""
    z = zeta_evaluator(omega, Omega, N)
    d_min = thm2_dmin(omega, Omega, N).w_form
    width = max(3, int(math.ceil(0.25 * d_min)))
    d_star, value = _refine_integer(z, max(1.0, d_min), 1, width)
    return d_star, value, d_min


@functools.lru_cache(maxsize=4096)
def _gaussian_Omega(nbar: float, omega: float) -> float:
    return max(worst_case_moment(nbar, omega), 1.0 + 1e-12)


def _best_over_factors(nbar: float, epsilon: float, N: CountLike) -> Optional[Thm2Minimum]:
    best: Optional[Thm2Minimum] = None
    for factor in OMEGA_FACTORS:
        Omega = factor / (1.0 - epsilon)
        try:
            omega = cutoff_params(nbar, epsilon, Omega)
            d, value, d_min = minimize_thm2_d(omega, Omega, N)
        except QDBoundsError as e:
            logger.debug(f"Skipping epsilon={epsilon:.4g}, Omega={Omega:.4g}: {e}")
            continue
        if best is None or value < best.zeta:
            best = Thm2Minimum(epsilon, omega, Omega, d, value, d_min)
    return best


def _exact_point(nbar: float, omega: float, N: CountLike) -> Optional[Thm2Minimum]:
    try:
        Omega = _gaussian_Omega(nbar, omega)
        d, value, d_min = minimize_thm2_d(omega, Omega, N)
    except QDBoundsError as e:
        logger.debug(f"Skipping omega={omega:.4g}: {e}")
        return None
    return Thm2Minimum(None, omega, Omega, d, value, d_min)


def _scan_and_refine(point: Callable[[float], Optional[Thm2Minimum]], grid: Sequence[float],
                     lower: float, upper: float) -> Thm2Minimum:
    """网格扫描后在最优网格点的邻域内做黄金分割细化"""
    evaluated = [point(x) for x in grid]
    feasible = [(i, r) for i, r in enumerate(evaluated) if r is not None]
    if not feasible:
        raise NoFeasiblePoint("参数网格上没有可行点", stage="thm2")
    i, best = min(feasible, key=lambda item: item[1].zeta)
    lo = grid[i - 1] if i > 0 else lower
    hi = grid[i + 1] if i < len(grid) - 1 else upper

    def objective(x: float) -> float:
        r = point(x)
        return math.inf if r is None else r.zeta

    if hi > lo:
        x = golden_section(objective, lo, hi, REFINE_TOL)
        refined = point(x)
        if refined is not None and refined.zeta < best.zeta:
            best = refined
    return best


def minimize_thm2(nbar: float, N: CountLike,
                  resource_model: Union[ResourceModel, str] = ResourceModel.EXACT) -> Thm2Minimum:
    """
    对 (ε 或 ω, Ω, d) 最小化定理二的 ζ

    Args:
        nbar: 高斯资源态的能量上限
        resource_model: "certificate" 经 cutoff_params 选取 (ω, Ω)；
            "exact" 取整个高斯集合的最小可行 Ω(ω)
    """
    if not float(nbar) > 0:
        raise InvalidParameter("高斯资源能量必须为正", "nbar", nbar)
    nbar = float(nbar)
    model = ResourceModel(resource_model)
    if model is ResourceModel.CERTIFICATE:
        lo, hi, points = EPSILON_GRID
        grid = list(np.linspace(lo, hi, points))
        best = _scan_and_refine(lambda e: _best_over_factors(nbar, e, N), grid, 1e-6, 1.0 - 1e-6)
    else:
        top = omega_max(nbar)
        grid = [top * k / (OMEGA_SCAN_POINTS + 1) for k in range(1, OMEGA_SCAN_POINTS + 1)]
        best = _scan_and_refine(lambda w: _exact_point(nbar, w, N), grid, grid[0] * 1e-3, top * (1.0 - 1e-9))
    logger.debug(f"thm2 ({model.value}): omega*={best.omega:.6g}, Omega*={best.Omega:.6g}, "
                 f"d*={best.d}, zeta*={best.zeta:.6g}")
    return best


# ---- 单点查询 ----

def solve_thm1(query: Thm1Query) -> Tuple[BoundResult, BoundResult]:
    """
    定理一的 (解析, 数值) 界限

    query 给出 d 时数值界在该 d 上求值，m 缺省取该 d 下最优的整数 m；
    只给 m 不给 d 视为参数错误。
    """
    if query.m is not None and query.d is None:
        raise InvalidParameter("指定 m 时必须同时指定 d", "m", query.m)
    analytic, degenerate = thm1_analytic(query.nbar, query.N)
    closed = BoundResult.from_zeta(analytic, query.delta, FormulaTag.ANALYTIC, degenerate=degenerate)
    if query.d is None:
        best = minimize_thm1(query.nbar, query.N)
        d, m, zeta, d_real = best.d, best.m, best.zeta, best.d_real
    else:
        if isinstance(query.d, bool) or int(query.d) != query.d or query.d < 2:
            raise InvalidParameter(f"截断维数 d 必须为不小于 2 的整数，当前 {query.d}", "d", query.d)
        d, d_real = int(query.d), float(query.d)
        m = query.m if query.m is not None else _integer_m(d, float(query.nbar), ln_count(query.N))[0]
        zeta = thm1_zeta(d, m, query.nbar, query.N)
    numeric = BoundResult.from_zeta(zeta, query.delta, FormulaTag.NUMERIC, d=d, m=m, d_real=d_real)
    return closed, numeric


def solve_thm2(query: Thm2Query) -> Tuple[Optional[BoundResult], BoundResult]:
    """
    固定 (ω, Ω) 时定理二的 (闭式, 数值) 界限

    γ₂N ≤ 1 时闭式无定义，返回 None；query 给出 d 时数值界在该 d 上求值。
    """
    try:
        closed = BoundResult.from_zeta(thm2_closed(query.omega, query.Omega, query.N), query.delta,
                                       FormulaTag.ANALYTIC)
    except DomainTooSmall:
        logger.warning("Closed form undefined: gamma2 * N <= 1")
        closed = None
    if query.d is None:
        d, zeta, d_real = minimize_thm2_d(query.omega, query.Omega, query.N)
    else:
        d, d_real = query.d, float(query.d)
        zeta = thm2_zeta(d, query.omega, query.Omega, query.N)
    return closed, BoundResult.from_zeta(zeta, query.delta, FormulaTag.NUMERIC, d=d, d_real=d_real)


# ---- 扫描 ----

def _thm1_row(args) -> SweepRow:
    n, nbar, delta = args
    result = minimize_thm1(nbar, n)
    analytic, _ = thm1_analytic(nbar, n)
    return SweepRow(N=n, bound_analytic=analytic / delta, bound_numeric=result.zeta / delta, d=result.d, m=result.m)


def _thm2_row(args) -> SweepRow:
    n, nbar, delta, model = args
    result = minimize_thm2(nbar, n, model)
    try:
        closed = thm2_closed(result.omega, result.Omega, n) / delta
    except DomainTooSmall:
        closed = math.nan
    return SweepRow(N=n, bound_analytic=closed, bound_numeric=result.zeta / delta, d=result.d,
                    epsilon=result.epsilon, omega=result.omega, Omega=result.Omega)


def sweep(theorem: Union[Theorem, int], grid: Sequence[LargeCount], nbar: float, delta: float,
          resource_model: Union[ResourceModel, str] = ResourceModel.EXACT, workers: int = 1,
          show_progress: bool = False) -> List[SweepRow]:
    """并发计算一条曲线，结果按 N 顺序合并"""
    theorem = Theorem(theorem)
    runner = ParallelRunner(max_workers=workers, show_progress=show_progress, description=f"thm{theorem.value}")
    if theorem is Theorem.ENERGY:
        results = runner.map(_thm1_row, [(n, nbar, delta) for n in grid])
    else:
        model = ResourceModel(resource_model)
        results = runner.map(_thm2_row, [(n, nbar, delta, model) for n in grid])
    failed = [r for r in results if not r.success]
    if failed:
        raise NoFeasiblePoint(f"{len(failed)} 个网格点优化失败: {failed[0].error}", stage="sweep")
    rows = [r.data for r in results]
    logger.info(f"Swept {len(rows)} grid points for theorem {theorem.value}")
    return rows
