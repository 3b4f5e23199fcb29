"""单模高斯态矩与指数截断参数"""

from .certify import CertificationReport, certify_set, sample_bounded_energy
from .fock_oracles import fock_mean_oracle, fock_moment_oracle, photon_distribution
from .gaussian_state import (
    CutoffReport,
    GaussianState,
    cutoff_params,
    exp_moment,
    mean_photon,
    moment_arrays,
    omega_max,
    worst_case_moment,
)

__all__ = [
    "CertificationReport",
    "CutoffReport",
    "GaussianState",
    "certify_set",
    "cutoff_params",
    "exp_moment",
    "fock_mean_oracle",
    "fock_moment_oracle",
    "mean_photon",
    "moment_arrays",
    "omega_max",
    "photon_distribution",
    "sample_bounded_energy",
    "worst_case_moment",
]
