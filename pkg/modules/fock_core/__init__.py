"""截断 Fock 空间数值核心"""

from .operators import (
    FockOperator,
    FockState,
    as_matrix,
    clipped_eigenvalues,
    exp_number_operator,
    expectation,
    fock_cutoff_gap,
    is_hermitian,
    is_state,
    kron,
    mutual_information,
    number_operator,
    partial_trace,
    partial_transpose,
    projector,
    random_density_matrix,
    random_hermitian,
    random_pure_state,
    trace_norm,
    validate_state,
    von_neumann_entropy,
)
from .special_states import TwoModeSqueezedState, gibbs_state, maximally_entangled, two_mode_squeezed

__all__ = [
    "FockOperator",
    "FockState",
    "TwoModeSqueezedState",
    "as_matrix",
    "clipped_eigenvalues",
    "exp_number_operator",
    "expectation",
    "fock_cutoff_gap",
    "gibbs_state",
    "is_hermitian",
    "is_state",
    "kron",
    "maximally_entangled",
    "mutual_information",
    "number_operator",
    "partial_trace",
    "partial_transpose",
    "projector",
    "random_density_matrix",
    "random_hermitian",
    "random_pure_state",
    "trace_norm",
    "two_mode_squeezed",
    "validate_state",
    "von_neumann_entropy",
]
