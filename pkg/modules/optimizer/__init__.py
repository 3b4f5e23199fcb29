"""ζ 表达式的数值最小化与幂律拟合"""

from .minimize import (
    SweepRow,
    Thm1Minimum,
    Thm2Minimum,
    log_grid,
    minimize_thm1,
    minimize_thm2,
    minimize_thm2_d,
    solve_thm1,
    solve_thm2,
    sweep,
)
from .power_law import PowerLawFit, power_law_fit
from .search import golden_section, golden_section_min, integer_argmin

__all__ = [
    "PowerLawFit",
    "SweepRow",
    "Thm1Minimum",
    "Thm2Minimum",
    "golden_section",
    "golden_section_min",
    "integer_argmin",
    "log_grid",
    "minimize_thm1",
    "minimize_thm2",
    "minimize_thm2_d",
    "power_law_fit",
    "solve_thm1",
    "solve_thm2",
    "sweep",
]
