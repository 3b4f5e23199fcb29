# modules/verify/report.py
"""
引理验证报告

每次试验记录余量 RHS − LHS，报告保留最坏的一次及其参数。
试验的随机流由 (seed, 试验编号) 派生，结果与调度顺序无关。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.constants import DEFAULT_TOLERANCES, Tolerances
from ..core.exceptions import QDBoundsError, validate_positive_int
from ..core.parallel import ParallelRunner

logger = logging.getLogger(__name__)

TrialOutcome = Optional[Tuple[float, Dict[str, object]]]
TrialFunction = Callable[[np.random.Generator, int], TrialOutcome]


@dataclass
class LemmaReport:
    lemma: str
    trials: int
    worst_slack: float
    worst_params: Dict[str, object]
    seed: int
    tolerances: Tolerances = DEFAULT_TOLERANCES
    skipped: int = 0
    threshold: Optional[float] = None
    slacks: List[float] = field(default_factory=list, repr=False)

    @property
    def allowed(self) -> float:
        """余量下限，缺省为 −inequality"""
        return -self.tolerances.inequality if self.threshold is None else self.threshold

    @property
    def passed(self) -> bool:
        return self.worst_slack >= self.allowed

    def to_dict(self) -> Dict[str, object]:
        return {
            "lemma": self.lemma,
            "trials": self.trials,
            "worst_slack": self.worst_slack if math.isfinite(self.worst_slack) else None,
            "worst_params": self.worst_params,
            "seed": self.seed,
            "tolerances": self.tolerances.to_dict(),
            "skipped": self.skipped,
            "passed": self.passed,
        }


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial)])


def run_trials(lemma: str, trials: int, seed: int, trial_fn: TrialFunction,
               tolerances: Tolerances = DEFAULT_TOLERANCES, workers: int = 1,
               threshold: Optional[float] = None) -> LemmaReport:
    """
    并发执行试验并汇总

    trial_fn 返回 (slack, params)，返回 None 表示该试验前提不成立而跳过。
    """
    trials = validate_positive_int(trials, "trials")
    runner = ParallelRunner(max_workers=workers, description=lemma)
    results = runner.map(lambda t: trial_fn(trial_rng(seed, t), t), range(trials))

    worst_slack, worst_params, skipped = math.inf, {}, 0
    slacks: List[float] = []
    for r in results:
        if not r.success:
            raise QDBoundsError(f"Trial {r.index} of {lemma} failed: {r.error}", "TRIAL_FAILED")
        if r.data is None:
            skipped += 1
            continue
        slack, params = r.data
        slack = float(slack)
        slacks.append(slack)
        if slack < worst_slack:
            worst_slack, worst_params = slack, {"trial": r.index, **params}

    report = LemmaReport(lemma, trials, worst_slack, worst_params, seed, tolerances, skipped, threshold, slacks)
    if skipped:
        logger.warning(f"{lemma}: skipped {skipped}/{trials} trials with vacuous premises")
    level = logging.INFO if report.passed else logging.ERROR
    logger.log(level, f"{lemma}: {trials} trials, worst slack {worst_slack:.3e}, "
                      f"{'passed' if report.passed else 'COUNTEREXAMPLE'}")
    return report
