"""命令行接口"""

from .commands import build_parser, cmd_bound, cmd_figure, cmd_gaussian, cmd_verify, configure_logging, figure_table, main

__all__ = [
    "build_parser",
    "cmd_bound",
    "cmd_figure",
    "cmd_gaussian",
    "cmd_verify",
    "configure_logging",
    "figure_table",
    "main",
]
