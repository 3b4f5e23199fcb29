# modules/gaussian/certify.py
"""
能量有界高斯态集合的指数截断证书

在 ⟨n̂⟩ ≤ n̄ 的高斯态上拒绝采样，检查 ω = cutoff_params(n̄, ε, Ω) 时 ⟨e^{ωn̂}⟩ ≤ Ω。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from ..core.exceptions import SamplerError, validate_positive_int
from ..core.parallel import ParallelRunner
from .gaussian_state import cutoff_params, moment_arrays

logger = logging.getLogger(__name__)

CHUNK_SIZE = 2048
MAX_ATTEMPT_FACTOR = 200


@dataclass
class CertificationReport:
    nbar: float
    epsilon: float
    Omega: float
    omega: float
    samples: int
    violations: int
    worst_moment: float
    squeeze_bound_violations: int
    seed: int
    worst_state: Dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "nbar": self.nbar,
            "epsilon": self.epsilon,
            "Omega": self.Omega,
            "omega": self.omega,
            "samples": self.samples,
            "violations": self.violations,
            "worst_moment": self.worst_moment,
            "squeeze_bound_violations": self.squeeze_bound_violations,
            "passed": self.passed,
            "seed": self.seed,
            "worst_state": self.worst_state,
        }


def sample_bounded_energy(nbar: float, count: int, rng: np.random.Generator) -> Dict[str, np.ndarray]:
    """拒绝采样 ⟨n̂⟩ = |α|² + m cosh 2r + sinh² r ≤ n̄"""
    if nbar == 0.0:
        zeros = np.zeros(count)
        return {"a_re": zeros, "a_im": zeros, "m": zeros, "r": zeros}
    r_max = math.asinh(math.sqrt(nbar))
    accepted: List[Dict[str, np.ndarray]] = []
    total = 0
    attempts = 0
    while total < count:
        if attempts > MAX_ATTEMPT_FACTOR * count:
            raise SamplerError("拒绝采样次数耗尽", attempts=attempts)
        batch = max(count - total, 64) * 3
        attempts += batch
        a2 = rng.uniform(0.0, nbar, batch)
        phase = rng.uniform(0.0, 2 * math.pi, batch)
        m = rng.uniform(0.0, nbar, batch)
        r = rng.uniform(0.0, r_max, batch)
        energy = a2 + m * np.cosh(2 * r) + np.sinh(r) ** 2
        keep = energy <= nbar
        a = np.sqrt(a2[keep])
        accepted.append({"a_re": a * np.cos(phase[keep]), "a_im": a * np.sin(phase[keep]),
                         "m": m[keep], "r": r[keep]})
        total += int(keep.sum())
    merged = {k: np.concatenate([chunk[k] for chunk in accepted])[:count] for k in accepted[0]}
    return merged


def _certify_chunk(args) -> Dict[str, object]:
    nbar, omega, Omega, count, seed, chunk = args
    rng = np.random.default_rng([seed, chunk])
    s = sample_bounded_energy(nbar, count, rng)
    moments = moment_arrays(s["a_re"], s["a_im"], s["m"], s["r"], omega)
    squeeze = (2 * s["m"] + 1) * np.exp(2 * s["r"])
    worst = int(np.argmax(moments))
    return {
        "violations": int(np.sum(moments > Omega)),
        "squeeze": int(np.sum(squeeze > 1.5 + 2 * nbar * (2 + nbar) + 1e-12)),
        "worst": float(moments[worst]),
        "state": {k: float(v[worst]) for k, v in s.items()},
    }


def certify_set(nbar: float, epsilon: float, Omega: float, samples: int, seed: int,
                omega: Optional[float] = None, workers: int = 1) -> CertificationReport:
    """
    采样验证证书

    Args:
        omega: 缺省取 cutoff_params(n̄, ε, Ω)；显式传入可做负对照
        workers: 样本预算按块分给工作线程，块种子为 (seed, 块号)
    """
    samples = validate_positive_int(samples, "samples")
    omega_used = cutoff_params(nbar, epsilon, Omega) if omega is None else float(omega)
    counts = [CHUNK_SIZE] * (samples // CHUNK_SIZE)
    if samples % CHUNK_SIZE:
        counts.append(samples % CHUNK_SIZE)
    tasks = [(nbar, omega_used, Omega, c, seed, i) for i, c in enumerate(counts)]
    results = ParallelRunner(max_workers=workers).map(_certify_chunk, tasks)
    failed = [r for r in results if not r.success]
    if failed:
        raise SamplerError(failed[0].error or "采样失败")

    data = [r.data for r in results]
    worst = max(data, key=lambda d: d["worst"])
    report = CertificationReport(
        nbar=nbar, epsilon=epsilon, Omega=Omega, omega=omega_used, samples=samples,
        violations=sum(d["violations"] for d in data),
        worst_moment=worst["worst"],
        squeeze_bound_violations=sum(d["squeeze"] for d in data),
        seed=seed, worst_state=worst["state"],
    )
    logger.info(f"Certified {samples} Gaussian states at omega={omega_used:.6g}: "
                f"{report.violations} violations, worst moment {report.worst_moment:.6g}")
    return report
