"""两条客观性界限的标量公式"""

from .lambert import lambert_w0, lambert_w0_exp
from .large_count import CountLike, LargeCount, ln_count
from .theorem_one import (
    ANALYTIC_COEFFICIENT,
    BoundResult,
    Thm1Query,
    thm1_analytic,
    thm1_f,
    thm1_f_real,
    thm1_m_opt,
    thm1_objective,
    thm1_relaxed,
    thm1_relaxed_dmin,
    thm1_zeta,
    thm1_zeta_log2,
)
from .theorem_two import (
    DMin,
    Thm2Intermediates,
    Thm2Query,
    d_tilde,
    gibbs_entropy_nats,
    thm2_closed,
    thm2_closed_from_gammas,
    thm2_dmin,
    thm2_intermediates,
    thm2_zeta,
    thm2_zeta_real,
    zeta_evaluator,
)

__all__ = [
    "ANALYTIC_COEFFICIENT",
    "BoundResult",
    "CountLike",
    "DMin",
    "LargeCount",
    "Thm1Query",
    "Thm2Intermediates",
    "Thm2Query",
    "d_tilde",
    "gibbs_entropy_nats",
    "lambert_w0",
    "lambert_w0_exp",
    "ln_count",
    "thm1_analytic",
    "thm1_f",
    "thm1_f_real",
    "thm1_m_opt",
    "thm1_objective",
    "thm1_relaxed",
    "thm1_relaxed_dmin",
    "thm1_zeta",
    "thm1_zeta_log2",
    "thm2_closed",
    "thm2_closed_from_gammas",
    "thm2_dmin",
    "thm2_intermediates",
    "thm2_zeta",
    "thm2_zeta_real",
    "zeta_evaluator",
]
