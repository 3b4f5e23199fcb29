# tests/test_optimizer.py
"""一维搜索、ζ 最小化与图表扫描"""

import math

import numpy as np
import pytest

from modules.bounds import (
    LargeCount,
    Thm1Query,
    Thm2Query,
    thm1_analytic,
    thm1_objective,
    thm1_zeta,
    thm2_closed,
    thm2_zeta,
)
from modules.core.constants import FIG2_GRID, FIG3_GRID, FormulaTag
from modules.core.exceptions import InvalidInterval, InvalidParameter
from modules.optimizer import (
    golden_section,
    golden_section_min,
    integer_argmin,
    log_grid,
    minimize_thm1,
    minimize_thm2,
    minimize_thm2_d,
    power_law_fit,
    solve_thm1,
    solve_thm2,
    sweep,
)

DELTA = 0.01


# ---- 搜索 ----

def test_golden_section_quadratic():
    assert golden_section(lambda x: (x - 3.0) ** 2, 0.0, 10.0) == pytest.approx(3.0, abs=1e-6)


def test_golden_section_kink():
    x, value = golden_section_min(lambda x: abs(x - math.pi), 0.0, 10.0, tol=1e-10)
    assert x == pytest.approx(math.pi, abs=1e-8)
    assert value < 1e-8


def test_golden_section_matches_grid_on_random_quadratics():
    rng = np.random.default_rng(21)
    grid = np.linspace(-5.0, 5.0, 100001)
    for _ in range(20):
        a, c = rng.uniform(0.1, 4.0), rng.uniform(-4.5, 4.5)
        f = lambda x: a * (x - c) ** 2 + 1.0
        assert golden_section(f, -5.0, 5.0) == pytest.approx(grid[np.argmin(f(grid))], abs=2e-4)


def test_golden_section_rejects_empty_interval():
    with pytest.raises(InvalidInterval):
        golden_section(lambda x: x, 1.0, 1.0)


def test_integer_argmin_breaks_ties_low():
    assert integer_argmin(lambda k: (k - 2.5) ** 2, range(10)) == (2, 0.25)
    with pytest.raises(InvalidInterval):
        integer_argmin(lambda k: k, [])


# ---- 定理一 ----

def test_thm1_reference_point():
    result = minimize_thm1(1.0, LargeCount.parse("1e60"))
    assert 0.03 <= result.zeta / DELTA <= 0.3
    assert result.d >= 2 and result.m >= 1


@pytest.mark.parametrize("exponent", [3, 6, 12, 30, 60])
def test_thm1_numeric_beats_analytic(exponent):
    n = LargeCount.from_log10(exponent)
    analytic, _ = thm1_analytic(1.0, n)
    assert minimize_thm1(1.0, n).zeta <= analytic


def test_thm1_single_system_uses_one_copy():
    assert minimize_thm1(1.0, 1).m == 1


@pytest.mark.parametrize("exponent", [12, 30, 60])
def test_thm1_integer_optimality(exponent):
    n = LargeCount.from_log10(exponent)
    result = minimize_thm1(1.0, n)
    assert result.zeta_f == pytest.approx(thm1_objective(result.d, 1.0, n), rel=1e-12)
    for d in (result.d - 1, result.d + 1):
        if d >= 2:
            assert thm1_objective(d, 1.0, n) >= result.zeta_f * (1 - 1e-12)
    for m in (result.m - 1, result.m + 1):
        if m >= 1:
            assert thm1_zeta(result.d, m, 1.0, n) >= result.zeta_m * (1 - 1e-12)


def test_thm1_is_deterministic():
    n = LargeCount.parse("1e40")
    assert minimize_thm1(1.0, n) == minimize_thm1(1.0, n)


# ---- 定理二 ----

def test_thm2_d_neighbors_are_worse():
    n = LargeCount.parse("1e20")
    d, value, d_min = minimize_thm2_d(0.5, 2.0, n)
    assert value == pytest.approx(thm2_zeta(d, 0.5, 2.0, n), rel=1e-12)
    assert thm2_zeta(d + 1, 0.5, 2.0, n) >= value
    assert thm2_zeta(d - 1, 0.5, 2.0, n) >= value
    assert abs(d - d_min) <= 1


def test_thm2_reference_point():
    n = LargeCount.parse("1e29")
    result = minimize_thm2(1.0, n)
    assert result.zeta / DELTA <= 5e-4
    assert result.epsilon is None
    assert 0 < result.omega < 0.5 * math.log(2.0)
    assert result.zeta <= thm2_closed(result.omega, result.Omega, n)


def test_thm2_decreases_with_N():
    values = [minimize_thm2(1.0, LargeCount.from_log10(e)).zeta for e in (20, 29, 40)]
    assert values[0] > values[1] > values[2]


def test_thm2_certificate_model():
    result = minimize_thm2(1.0, LargeCount.parse("1e29"), "certificate")
    assert result.epsilon is not None and 0 < result.epsilon < 1
    assert result.Omega > 1


@pytest.mark.parametrize("nbar", [0.0, -1.0])
def test_thm2_rejects_non_positive_energy(nbar):
    with pytest.raises(InvalidParameter):
        minimize_thm2(nbar, 1e20)


# ---- 单点查询 ----

def test_solve_thm1_matches_minimizer():
    closed, numeric = solve_thm1(Thm1Query(1.0, "1e60", DELTA))
    best = minimize_thm1(1.0, "1e60")
    assert closed.formula is FormulaTag.ANALYTIC
    assert numeric.formula is FormulaTag.NUMERIC
    assert closed.value == pytest.approx(thm1_analytic(1.0, "1e60")[0] / DELTA, rel=1e-12)
    assert (numeric.d, numeric.m, numeric.zeta) == (best.d, best.m, best.zeta)
    assert numeric.value <= closed.value


def test_solve_thm1_at_fixed_d():
    _, free = solve_thm1(Thm1Query(1.0, "1e60", DELTA))
    _, fixed = solve_thm1(Thm1Query(1.0, "1e60", DELTA, d=free.d + 3))
    assert fixed.d == free.d + 3
    assert fixed.zeta == pytest.approx(thm1_zeta(fixed.d, fixed.m, 1.0, "1e60"), rel=1e-12)
    assert fixed.value >= free.value
    with pytest.raises(InvalidParameter):
        solve_thm1(Thm1Query(1.0, "1e60", DELTA, m=5))


def test_solve_thm2_fixed_cutoff():
    closed, numeric = solve_thm2(Thm2Query(0.2, 2.0, "1e29", DELTA))
    d, zeta, d_min = minimize_thm2_d(0.2, 2.0, "1e29")
    assert (numeric.d, numeric.zeta, numeric.d_real) == (d, zeta, d_min)
    assert closed is None or numeric.value <= closed.value
    _, at_d = solve_thm2(Thm2Query(0.2, 2.0, "1e29", DELTA, d=d + 1))
    assert at_d.zeta == pytest.approx(thm2_zeta(d + 1, 0.2, 2.0, "1e29"), rel=1e-12)


# ---- 网格与扫描 ----

def test_log_grid():
    grid = log_grid(*FIG2_GRID)
    assert len(grid) == 13
    assert grid[0].log10() == pytest.approx(12.0)
    assert grid[-1].log10() == pytest.approx(60.0)
    assert [g.log10() for g in log_grid(5, 9, 1)] == [pytest.approx(5.0)]
    with pytest.raises(InvalidParameter):
        log_grid(10, 5, 3)


def test_sweep_rows_and_worker_independence():
    grid = log_grid(12, 20, 3)
    rows = sweep(1, grid, 1.0, DELTA)
    assert [r.N for r in rows] == grid
    for r in rows:
        assert r.bound_numeric <= r.bound_analytic
        assert r.m is not None
    assert sweep(1, grid, 1.0, DELTA, workers=2) == rows


@pytest.mark.slow
def test_energy_figure_fit():
    rows = sweep(1, log_grid(*FIG2_GRID), 1.0, DELTA)
    fit = power_law_fit([(r.N, r.bound_numeric) for r in rows], DELTA)
    assert 14.5 <= fit.alpha <= 16.0
    assert 5.0 <= fit.beta <= 9.0
    assert fit.residual <= 0.05
    assert all(r.bound_numeric <= r.bound_analytic for r in rows)


@pytest.mark.slow
def test_exponential_figure_fit():
    rows = sweep(2, log_grid(*FIG3_GRID), 1.0, DELTA, "exact")
    fit = power_law_fit([(r.N, r.bound_numeric) for r in rows], DELTA)
    assert 3.0 <= fit.alpha <= 3.5
    assert rows[0].bound_numeric <= 5e-4
    assert fit.residual <= 0.05
    closed = [r for r in rows if not math.isnan(r.bound_analytic)]
    assert closed
    assert all(r.bound_numeric <= r.bound_analytic * (1 + 1e-9) for r in closed)
