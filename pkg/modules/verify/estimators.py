# modules/verify/estimators.py
"""
受约束菱形范数的采样下界估计

在 A⊗A' 上采样随机纯态，不满足能量约束的样本沿可行边界向真空分量混合，
每个约束阶梯级上再从与预算无关的起点做逐坐标局部搜索。
返回值只是下界，从不声称达到上确界；下界对 n̄ 和预算单调不减。
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..channels.channel import QuantumChannel, apply_extended
from ..core.constants import DEFAULT_ITERATIONS, DEFAULT_SAMPLES, DEFAULT_SEED, ESTIMATE_CAP
from ..core.exceptions import InvalidBudget, InvalidParameter, ShapeError, validate_non_negative_float, validate_positive_float
from ..fock_core.operators import trace_norm

logger = logging.getLogger(__name__)

# 投影后留在可行域内侧的相对余量
PROJECTION_MARGIN = 1e-12
INITIAL_STEP = 0.5
MIN_STEP = 1e-4
# 约束阶梯：权重区间上的固定分数点
LADDER_FRACTIONS = (1 / 16, 1 / 8, 1 / 4, 1 / 2, 1.0)
# 局部搜索起点的候选数，不计入预算
WARM_STARTS = 8


@dataclass(frozen=True)
class NormBudget:
    """随机种子数与局部搜索迭代数"""
    samples: int = DEFAULT_SAMPLES
    iterations: int = DEFAULT_ITERATIONS

    def __post_init__(self):
        for name in ("samples", "iterations"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise InvalidBudget(f"{name} 必须是整数，当前 {value}", self.samples, self.iterations)
        if self.samples < 1 or self.iterations < 0:
            raise InvalidBudget("估计器预算至少需要一个随机样本", self.samples, self.iterations)

    def to_dict(self) -> Dict[str, int]:
        return {"samples": int(self.samples), "iterations": int(self.iterations)}


@dataclass(frozen=True)
class InputConstraint:
    """
    输入端约束 Σ_i w_i ‖Ψ_i‖² ≤ bound，Ψ 的行指标为信道输入能级

    平均能量约束 w_i = i；指数矩约束 w_i = e^{ωi}；无约束时 bound 为 None。
    """
    tag: str
    weights: np.ndarray
    bound: Optional[float]
    params: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def energy(cls, nbar: float, dim: int) -> "InputConstraint":
        nbar = validate_non_negative_float(nbar, "nbar")
        return cls("energy", np.arange(dim, dtype=float), nbar, {"nbar": nbar})

    @classmethod
    def exponential(cls, omega: float, Omega: float, dim: int) -> "InputConstraint":
        omega = validate_positive_float(omega, "omega")
        Omega = validate_positive_float(Omega, "Omega")
        if not Omega > 1.0:
            raise InvalidParameter(f"Ω 必须大于 1，当前 {Omega}", "Omega", Omega)
        return cls("exponential", np.exp(omega * np.arange(dim)), Omega, {"omega": omega, "Omega": Omega})

    @classmethod
    def unconstrained(cls, dim: int) -> "InputConstraint":
        return cls("unconstrained", np.zeros(dim), None)

    def value(self, psi: np.ndarray) -> float:
        masses = np.sum(np.abs(psi) ** 2, axis=1)
        return float(np.dot(self.weights, masses) / np.sum(masses))

    def project(self, psi: np.ndarray) -> Optional[np.ndarray]:
        """
        归一化并投影到可行域

        保持真空行不变、按同一比例缩放激发行，比例由约束取等解出。
        """
        psi = np.array(psi, dtype=complex)
        norm = np.linalg.norm(psi)
        if norm == 0.0 or not np.isfinite(norm):
            return None
        psi /= norm
        if self.bound is None or self.value(psi) <= self.bound:
            return psi
        masses = np.sum(np.abs(psi) ** 2, axis=1)
        if masses[0] <= 1e-300:
            psi[0, 0] = 1.0
            masses[0] = 1.0
        excited = masses[1:].sum()
        weighted = float(np.dot(self.weights[1:], masses[1:]))
        denominator = weighted - self.bound * excited
        scale2 = masses[0] * (self.bound - self.weights[0]) / denominator if denominator > 0 else 0.0
        psi[1:] *= np.sqrt(max(scale2, 0.0)) * (1.0 - PROJECTION_MARGIN)
        return psi / np.linalg.norm(psi)


@dataclass(frozen=True, eq=False)
class NormEstimate:
    """菱形范数下界及其达到者"""
    lower_bound: float
    best_input: Dict[str, object]
    budget: NormBudget
    constraint: str
    params: Dict[str, float] = field(default_factory=dict)
    coefficients: Optional[np.ndarray] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, object]:
        return {
            "lower_bound": self.lower_bound,
            "best_input": dict(self.best_input),
            "budget": self.budget.to_dict(),
            "constraint": self.constraint,
            "params": dict(self.params),
        }


def output_distance(ch0: QuantumChannel, ch1: QuantumChannel, psi: np.ndarray) -> float:
    """‖(Λ₀ − Λ₁) ⊗ id [|ψ⟩⟨ψ|]‖₁"""
    return trace_norm(apply_extended(ch0, psi) - apply_extended(ch1, psi))


def _check_pair(ch0: QuantumChannel, ch1: QuantumChannel, dims: Optional[Sequence[int]]) -> Tuple[int, int]:
    if ch0.din != ch1.din or ch0.dout != ch1.dout:
        raise ShapeError("两个信道的输入输出维数必须一致", expected=(ch0.din, ch0.dout), actual=(ch1.din, ch1.dout))
    din, d_anc = (ch0.din, ch0.din) if dims is None else (int(dims[0]), int(dims[1]))
    if din != ch0.din or d_anc < 1:
        raise ShapeError("dims 与信道输入维数不符", expected=ch0.din, actual=tuple(dims))
    return din, d_anc


def _fixed_candidates(din: int, d_anc: int):
    vacuum = np.zeros((din, d_anc), dtype=complex)
    vacuum[0, 0] = 1.0
    yield "vacuum", vacuum
    entangled = np.zeros((din, d_anc), dtype=complex)
    k = min(din, d_anc)
    entangled[np.arange(k), np.arange(k)] = 1.0 / np.sqrt(k)
    yield "maximally_entangled", entangled


def random_coefficients(din: int, d_anc: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal((din, d_anc)) + 1j * rng.standard_normal((din, d_anc))


def bound_ladder(constraint: InputConstraint) -> List[Optional[float]]:
    """
    与查询无关的约束阶梯中不超过 bound 的各级

    阶梯由权重区间的固定分数点和各能级权重组成；无约束时只有一级 None。
    """
    if constraint.bound is None:
        return [None]
    w0, w_max = float(constraint.weights[0]), float(constraint.weights[-1])
    levels = {w0 + (w_max - w0) * f for f in LADDER_FRACTIONS}
    levels.update(float(w) for w in constraint.weights[1:])
    return sorted(level for level in levels if w0 < level <= constraint.bound)


def _local_search(distance: Callable[[np.ndarray], float], constraint: InputConstraint, psi: np.ndarray,
                  value: float, iterations: int, rng: np.random.Generator) -> Tuple[np.ndarray, float, int]:
    """逐坐标局部搜索；每步消耗的随机数个数固定，迭代更多时路径只是延长"""
    din, d_anc = psi.shape
    step = INITIAL_STEP
    improvements = 0
    for _ in range(iterations):
        i, a = int(rng.integers(din)), int(rng.integers(d_anc))
        kick = step * (rng.standard_normal() + 1j * rng.standard_normal())
        trial = psi.copy()
        trial[i, a] += kick
        trial = constraint.project(trial)
        trial_value = distance(trial) if trial is not None else -1.0
        if trial_value > value:
            psi, value = trial, trial_value
            improvements += 1
            step = min(step * 1.5, 1.0)
        else:
            step = max(step * 0.9, MIN_STEP)
    return psi, value, improvements


def _estimate(ch0: QuantumChannel, ch1: QuantumChannel, constraint: InputConstraint,
              dims: Optional[Sequence[int]], budget: Optional[NormBudget], seed: int) -> NormEstimate:
    """
    候选池 = 可行的固定候选 ∪ 各阶梯级上的投影样本与局部搜索结果

    样本、热启动和每级搜索各用独立随机流，候选池随 bound 与预算单调增大，
    因此下界对 n̄ 和预算都不减。
    """
    din, d_anc = _check_pair(ch0, ch1, dims)
    budget = budget or NormBudget()

    def distance(psi: np.ndarray) -> float:
        return output_distance(ch0, ch1, psi)

    best: Dict[str, object] = {"value": -1.0, "psi": None, "source": ""}

    def consider(psi: Optional[np.ndarray], value: float, label: str):
        if psi is not None and value > best["value"]:
            best.update(value=value, psi=psi, source=label)

    def normalized(psi: np.ndarray) -> np.ndarray:
        return psi / np.linalg.norm(psi)

    fixed = [(label, normalized(psi)) for label, psi in _fixed_candidates(din, d_anc)]
    for label, psi in fixed:
        if constraint.bound is None or constraint.value(psi) <= constraint.bound:
            consider(psi, distance(psi), label)

    sample_rng = np.random.default_rng([seed, 0])
    samples = [random_coefficients(din, d_anc, sample_rng) for _ in range(budget.samples)]
    warm_rng = np.random.default_rng([seed, 2])
    warm = [(f"warm:{j}", random_coefficients(din, d_anc, warm_rng)) for j in range(WARM_STARTS)]

    improvements = 0
    ladder = bound_ladder(constraint)
    for k, level in enumerate(ladder):
        at_level = constraint if level is None else replace(constraint, bound=level)
        suffix = "" if level is None else f"@{level:.6g}"

        start_psi, start_value, start_label = None, -1.0, ""
        for label, psi in fixed + warm:
            psi = at_level.project(psi)
            value = distance(psi) if psi is not None else -1.0
            if value > start_value:
                start_psi, start_value, start_label = psi, value, label
        consider(start_psi, start_value, start_label + suffix)

        for j, raw in enumerate(samples):
            psi = at_level.project(raw)
            if psi is not None:
                consider(psi, distance(psi), f"sample:{j}{suffix}")

        if start_psi is not None and budget.iterations:
            psi, value, count = _local_search(distance, at_level, start_psi, start_value, budget.iterations,
                                              np.random.default_rng([seed, 1, k]))
            improvements += count
            consider(psi, value, f"{start_label}{suffix}+local")

    lower = float(min(max(best["value"], 0.0), ESTIMATE_CAP))
    logger.debug(f"{constraint.tag} estimate {lower:.6g} from {best['source']} "
                 f"({budget.samples} samples, {len(ladder)} levels, {improvements} local improvements)")
    best_input = {"source": best["source"], "ancilla_dim": d_anc}
    if constraint.bound is not None:
        best_input["constraint_value"] = constraint.value(best["psi"])
    return NormEstimate(lower, best_input, budget, constraint.tag, dict(constraint.params), best["psi"])


def ecd_lower_bound(ch0: QuantumChannel, ch1: QuantumChannel, nbar: float, dims: Optional[Sequence[int]] = None,
                    budget: Optional[NormBudget] = None, seed: int = DEFAULT_SEED) -> NormEstimate:
    """能量约束菱形范数 ‖Λ₀ − Λ₁‖_⋄n̄ 的下界，约束 Tr(ρ_A n̂) ≤ n̄"""
    return _estimate(ch0, ch1, InputConstraint.energy(nbar, ch0.din), dims, budget, seed)


def exp_lower_bound(ch0: QuantumChannel, ch1: QuantumChannel, omega: float, Omega: float,
                    dims: Optional[Sequence[int]] = None, budget: Optional[NormBudget] = None,
                    seed: int = DEFAULT_SEED) -> NormEstimate:
    """指数截断菱形范数 ‖Λ₀ − Λ₁‖_⋄ωΩ 的下界，约束 Tr(ρ_A e^{ωn̂}) ≤ Ω"""
    return _estimate(ch0, ch1, InputConstraint.exponential(omega, Omega, ch0.din), dims, budget, seed)


def diamond_lower_bound(ch0: QuantumChannel, ch1: QuantumChannel, dims: Optional[Sequence[int]] = None,
                        budget: Optional[NormBudget] = None, seed: int = DEFAULT_SEED) -> NormEstimate:
    return _estimate(ch0, ch1, InputConstraint.unconstrained(ch0.din), dims, budget, seed)
