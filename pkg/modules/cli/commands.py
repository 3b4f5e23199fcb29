# modules/cli/commands.py
"""
命令行入口

子命令 bound / figure / gaussian / verify / config。数据写到标准输出或 --output，
日志写到标准错误。退出码：0 成功，1 验证发现反例，2 参数错误，3 I/O 错误。
"""

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..bounds.large_count import LargeCount
from ..bounds.theorem_one import Thm1Query
from ..bounds.theorem_two import Thm2Query
from ..config.config_manager import ConfigManager, RunConfig
from ..core.constants import FIG2_GRID, FIG3_GRID, LOG_FORMAT, PROJECT_NAME, VERSION, Theorem
from ..core.exceptions import (
    EXIT_COUNTEREXAMPLE,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    ConfigurationError,
    InvalidParameter,
    with_exit_code,
)
from ..gaussian.certify import certify_set
from ..gaussian.gaussian_state import GaussianState, cutoff_params, exp_moment
from ..optimizer.minimize import log_grid, minimize_thm2, solve_thm1, solve_thm2, sweep
from ..optimizer.power_law import power_law_fit
from ..utils.file_utils import FileUtils
from ..verify.estimators import NormBudget
from ..verify.suite import SUITES, run_suite

logger = logging.getLogger(__name__)

FIG2_COLUMNS = ["N", "bound_analytic", "bound_numeric", "d", "m"]
FIG3_COLUMNS = ["N", "bound_closed", "bound_numeric", "d", "epsilon", "omega", "Omega"]


def configure_logging(verbose: bool = False, quiet: bool = False, log_file: Optional[str] = None) -> None:
    """标准错误输出日志，可选追加文件日志"""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


def _emit(config: RunConfig, record: Dict[str, Any]) -> None:
    """单条记录按 fmt 输出"""
    if config.fmt == "json":
        FileUtils.save_json(record, config.output)
    else:
        FileUtils.write_text(FileUtils.table_to_csv(pd.DataFrame([record])), config.output)


def _require_N(config: RunConfig) -> LargeCount:
    if config.N is None:
        raise ConfigurationError("bound 命令需要 --N", "N")
    return LargeCount.parse(config.N)


# ---- bound ----

def cmd_bound(config: RunConfig, d: Optional[int] = None, m: Optional[int] = None) -> int:
    """
    单点界限；给出 d（定理一还可给 m）时在该点求值而不做最小化
    """
    n = _require_N(config)
    if config.theorem == Theorem.ENERGY.value:
        closed, numeric = solve_thm1(Thm1Query(config.nbar, n, config.delta, d, m))
        record = {
            "theorem": 1, "N": str(n), "nbar": config.nbar, "delta": config.delta,
            "bound_analytic": closed.value, "bound_numeric": numeric.value,
            "d": numeric.d, "m": numeric.m, "d_real": numeric.d_real, "degenerate": closed.degenerate,
        }
    else:
        if m is not None:
            raise InvalidParameter("定理二没有参数 m", "m", m)
        if config.omega is not None and config.Omega is not None:
            epsilon, omega, Omega, model = None, config.omega, config.Omega, "fixed"
        else:
            best = minimize_thm2(config.nbar, n, config.resource_model)
            epsilon, omega, Omega, model = best.epsilon, best.omega, best.Omega, config.resource_model
        closed, numeric = solve_thm2(Thm2Query(omega, Omega, n, config.delta, d))
        record = {
            "theorem": 2, "N": str(n), "nbar": config.nbar, "delta": config.delta, "resource_model": model,
            "bound_closed": None if closed is None else closed.value, "bound_numeric": numeric.value,
            "d": numeric.d, "d_real": numeric.d_real, "epsilon": epsilon, "omega": omega, "Omega": Omega,
        }
    logger.info(f"Theorem {config.theorem} bound at N={n}: {record['bound_numeric']:.6g}")
    _emit(config, record)
    return EXIT_OK


# ---- figure ----

def figure_table(config: RunConfig) -> Dict[str, Any]:
    """计算图表数据与幂律拟合"""
    default = FIG2_GRID if config.figure == "fig2" else FIG3_GRID
    lo = default[0] if config.grid_lo is None else config.grid_lo
    hi = default[1] if config.grid_hi is None else config.grid_hi
    points = default[2] if config.grid_points is None else config.grid_points
    theorem = Theorem.ENERGY if config.figure == "fig2" else Theorem.EXP_CUTOFF
    rows = sweep(theorem, log_grid(lo, hi, points), config.nbar, config.delta, config.resource_model,
                 workers=config.workers, show_progress=config.output is not None)

    if theorem is Theorem.ENERGY:
        records = [{"N": str(r.N), "bound_analytic": r.bound_analytic, "bound_numeric": r.bound_numeric,
                    "d": r.d, "m": r.m} for r in rows]
        columns = FIG2_COLUMNS
    else:
        records = [{"N": str(r.N), "bound_closed": r.bound_analytic, "bound_numeric": r.bound_numeric,
                    "d": r.d, "epsilon": r.epsilon, "omega": r.omega, "Omega": r.Omega} for r in rows]
        columns = FIG3_COLUMNS

    fit = None
    if len(rows) >= 3:
        fitted = power_law_fit([(r.N, r.bound_numeric) for r in rows], config.delta)
        fit = {**fitted.to_dict(), "delta": config.delta, "grid": [lo, hi, points]}
        logger.info(f"{config.figure} fit: beta={fitted.beta:.6g}, alpha={fitted.alpha:.6g}, "
                    f"residual={fitted.residual:.3g}")
    else:
        logger.warning("Fewer than 3 grid points, skipping power-law fit")
    return {"figure": config.figure, "columns": columns, "rows": records, "fit": fit}


def cmd_figure(config: RunConfig) -> int:
    table = figure_table(config)
    if config.fmt == "json":
        FileUtils.save_json(table, config.output)
    else:
        df = pd.DataFrame(table["rows"], columns=table["columns"])
        FileUtils.write_text(FileUtils.table_to_csv(df, table["fit"]), config.output)
    return EXIT_OK


# ---- gaussian ----

def cmd_gaussian(config: RunConfig, state: Optional[GaussianState] = None, certify: bool = False) -> int:
    """
    单个高斯态的指数矩与截断参数；certify 时对整个能量有界集合采样验证
    """
    state = state or GaussianState()
    record: Dict[str, Any] = {"state": {"alpha_re": state.alpha.real, "alpha_im": state.alpha.imag,
                                        "m": state.m, "r": state.r}}
    omega = config.omega
    if config.epsilon is not None and config.Omega is not None:
        omega = cutoff_params(config.nbar, config.epsilon, config.Omega)
        record["cutoff_params"] = {"nbar": config.nbar, "epsilon": config.epsilon,
                                   "Omega": config.Omega, "omega": omega}
    if omega is None:
        raise InvalidParameter("需要 --omega 或同时给出 --eps 与 --Omega", "omega")
    record["cutoff"] = exp_moment(state, omega, config.Omega).to_dict()

    exit_code = EXIT_OK
    if certify:
        if config.epsilon is None or config.Omega is None:
            raise InvalidParameter("--certify 需要 --eps 与 --Omega", "epsilon")
        report = certify_set(config.nbar, config.epsilon, config.Omega, config.samples, config.seed,
                             workers=config.workers)
        record["certification"] = report.to_dict()
        exit_code = EXIT_OK if report.passed else EXIT_COUNTEREXAMPLE
    FileUtils.save_json(record, config.output)
    return exit_code


# ---- verify ----

def cmd_verify(config: RunConfig) -> int:
    if config.suite != "all" and config.suite not in SUITES:
        raise InvalidParameter(f"未知的验证套件: {config.suite}", "suite", config.suite)
    budget = NormBudget(config.samples, config.iterations)
    reports = run_suite(config.suite, config.trials, config.seed, budget, config.tolerances, config.workers)
    passed = all(r.passed for r in reports)
    FileUtils.save_json({"suite": config.suite, "seed": config.seed, "passed": passed,
                         "reports": [r.to_dict() for r in reports]}, config.output)
    if not passed:
        worst = min(reports, key=lambda r: r.worst_slack - r.allowed)
        logger.error(f"Counterexample in {worst.lemma}: {worst.worst_params}")
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


# ---- 参数解析 ----

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", dest="config_file", help="YAML 配置文件")
    common.add_argument("--log-file", dest="log_file")
    common.add_argument("--verbose", action="store_true")
    common.add_argument("--quiet", action="store_true")
    common.add_argument("--workers", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--output", "-o")
    common.add_argument("--format", dest="fmt", choices=["csv", "json"])
    common.add_argument("--nbar", type=float)
    common.add_argument("--delta", type=float)

    parser = argparse.ArgumentParser(prog=PROJECT_NAME, description="量子达尔文主义客观性界限的计算与验证")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    bound = sub.add_parser("bound", parents=[common], help="单点界限")
    bound.add_argument("--thm", dest="theorem", type=int, choices=[1, 2])
    bound.add_argument("--N")
    bound.add_argument("--omega", type=float)
    bound.add_argument("--Omega", type=float)
    bound.add_argument("--resource-model", dest="resource_model", choices=["exact", "certificate"])
    bound.add_argument("--d", dest="fixed_d", type=int, help="在给定截断维数处求值而不最小化")
    bound.add_argument("--m", dest="fixed_m", type=int, help="定理一的块数 m，需同时给出 --d")

    figure = sub.add_parser("figure", parents=[common], help="图表数据与幂律拟合")
    figure.add_argument("figure", choices=["fig2", "fig3"])
    figure.add_argument("--grid-lo", dest="grid_lo", type=float, help="网格下限的十进制指数")
    figure.add_argument("--grid-hi", dest="grid_hi", type=float)
    figure.add_argument("--grid-points", dest="grid_points", type=int)
    figure.add_argument("--resource-model", dest="resource_model", choices=["exact", "certificate"])

    gaussian = sub.add_parser("gaussian", parents=[common], help="高斯态指数矩与截断参数")
    gaussian.add_argument("--eps", dest="epsilon", type=float)
    gaussian.add_argument("--Omega", type=float)
    gaussian.add_argument("--omega", type=float)
    gaussian.add_argument("--alpha-re", dest="alpha_re", type=float, default=0.0)
    gaussian.add_argument("--alpha-im", dest="alpha_im", type=float, default=0.0)
    gaussian.add_argument("--m", dest="thermal", type=float, default=0.0)
    gaussian.add_argument("--r", dest="squeeze", type=float, default=0.0)
    gaussian.add_argument("--certify", action="store_true")
    gaussian.add_argument("--samples", type=int)

    verify = sub.add_parser("verify", parents=[common], help="引理验证套件")
    verify.add_argument("--suite", help=f"all 或 {', '.join(SUITES)}")
    verify.add_argument("--trials", type=int)
    verify.add_argument("--samples", type=int)
    verify.add_argument("--iterations", type=int)

    config = sub.add_parser("config", parents=[common], help="打印生效的运行配置")
    config.add_argument("--dump", action="store_true", help="输出可作为 --config 读回的 YAML，缺省输出 JSON")
    return parser


RUN_CONFIG_KEYS = ("command", "theorem", "figure", "nbar", "delta", "epsilon", "Omega", "omega", "N",
                   "grid_lo", "grid_hi", "grid_points", "suite", "trials", "samples", "iterations", "seed",
                   "output", "fmt", "resource_model", "workers", "log_file")


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: getattr(args, key) for key in RUN_CONFIG_KEYS if getattr(args, key, None) is not None}


@with_exit_code
def run(args: argparse.Namespace, manager: Optional[ConfigManager] = None) -> int:
    manager = manager or ConfigManager()
    config = manager.build(_overrides(args), config_file=args.config_file)
    if config.log_file and not args.log_file:
        configure_logging(args.verbose, args.quiet, config.log_file)
    logger.debug(f"Effective config: {config.to_dict()}")

    if config.command == "bound":
        return cmd_bound(config, args.fixed_d, args.fixed_m)
    if config.command == "figure":
        return cmd_figure(config)
    if config.command == "gaussian":
        state = GaussianState(complex(args.alpha_re, args.alpha_im), args.thermal, args.squeeze)
        return cmd_gaussian(config, state, certify=args.certify)
    if config.command == "verify":
        return cmd_verify(config)
    if args.dump:
        FileUtils.write_text(config.dump(), config.output)
    else:
        FileUtils.save_json(config.to_dict(), config.output)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, manager: Optional[ConfigManager] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        configure_logging(args.verbose, args.quiet, args.log_file)
    except OSError as e:
        logging.error(f"Cannot open log file {args.log_file}: {e}")
        return EXIT_IO
    return run(args, manager)
