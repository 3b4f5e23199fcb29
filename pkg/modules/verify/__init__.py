"""引理的穷举验证与受约束菱形范数的下界估计"""

from .estimators import (
    InputConstraint,
    NormBudget,
    NormEstimate,
    bound_ladder,
    diamond_lower_bound,
    ecd_lower_bound,
    exp_lower_bound,
    output_distance,
)
from .lemmas import (
    check_cj_truncation,
    check_expcut_lemma,
    check_fock_cutoff,
    check_fock_truncation,
    check_gentle_measurement,
    check_mutual_info_bound,
    check_norm_axioms,
    check_povm_completeness,
    check_trunc_lemma2,
    cj_truncation_sides,
    expcut_rhs,
    filter_operator,
    filtering_checks,
    fock_truncation_sides,
    gentle_measurement_sides,
    mutual_info_sides,
    positivity_witness,
    povm_identity_residuals,
    trunc_lemma2_rhs,
    trunc_lemma2_sides,
)
from .report import LemmaReport, run_trials
from .suite import SUITES, run_suite

__all__ = [
    "InputConstraint",
    "LemmaReport",
    "NormBudget",
    "NormEstimate",
    "SUITES",
    "bound_ladder",
    "check_cj_truncation",
    "check_expcut_lemma",
    "check_fock_cutoff",
    "check_fock_truncation",
    "check_gentle_measurement",
    "check_mutual_info_bound",
    "check_norm_axioms",
    "check_povm_completeness",
    "check_trunc_lemma2",
    "cj_truncation_sides",
    "diamond_lower_bound",
    "ecd_lower_bound",
    "exp_lower_bound",
    "expcut_rhs",
    "filter_operator",
    "filtering_checks",
    "fock_truncation_sides",
    "gentle_measurement_sides",
    "mutual_info_sides",
    "output_distance",
    "positivity_witness",
    "povm_identity_residuals",
    "run_suite",
    "run_trials",
    "trunc_lemma2_rhs",
    "trunc_lemma2_sides",
]
