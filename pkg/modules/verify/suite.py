# modules/verify/suite.py
"""验证套件注册表"""

import logging
from typing import Callable, Dict, List, Optional

from ..core.constants import DEFAULT_SEED, DEFAULT_TOLERANCES, Tolerances
from ..core.exceptions import InvalidParameter
from .estimators import NormBudget
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
)
from .report import LemmaReport

logger = logging.getLogger(__name__)

SuiteRunner = Callable[[Optional[int], int, Optional[NormBudget], Tolerances, int], LemmaReport]


def _plain(check, default_trials: int) -> SuiteRunner:
    def runner(trials, seed, budget, tolerances, workers):
        return check(trials=trials or default_trials, seed=seed, tolerances=tolerances, workers=workers)
    return runner


def _with_budget(check, default_trials: int) -> SuiteRunner:
    def runner(trials, seed, budget, tolerances, workers):
        return check(trials=trials or default_trials, seed=seed, budget=budget, tolerances=tolerances,
                     workers=workers)
    return runner


SUITES: Dict[str, SuiteRunner] = {
    "gentle": _plain(check_gentle_measurement, 200),
    "fock_truncation": _plain(check_fock_truncation, 200),
    "fock_cutoff": _plain(check_fock_cutoff, 200),
    "cj_truncation": _plain(check_cj_truncation, 100),
    "trunc_lemma2": _with_budget(check_trunc_lemma2, 100),
    "expcut": _with_budget(check_expcut_lemma, 100),
    "mutual_info": _plain(check_mutual_info_bound, 100),
    "norm_axioms": _plain(check_norm_axioms, 200),
    "povm": _plain(check_povm_completeness, 100),
}


def run_suite(name: str = "all", trials: Optional[int] = None, seed: int = DEFAULT_SEED,
              budget: Optional[NormBudget] = None, tolerances: Tolerances = DEFAULT_TOLERANCES,
              workers: int = 1) -> List[LemmaReport]:
    """
    运行单个套件或全部套件

    Args:
        name: 套件编号或 "all"
        trials: 覆盖各套件的缺省试验次数
    """
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise InvalidParameter(f"未知的验证套件: {name}，可选 {', '.join(SUITES)} 或 all", "suite", name)
    reports = []
    for suite in names:
        logger.info(f"Running suite {suite}")
        reports.append(SUITES[suite](trials, seed, budget, tolerances, workers))
    failed = [r.lemma for r in reports if not r.passed]
    if failed:
        logger.error(f"Counterexamples found in: {', '.join(failed)}")
    return reports
