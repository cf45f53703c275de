"""
cavimod 명령행 모듈
"""

from cli.expression import parse_map_expression
from cli.report import Report, emit_plot_data, to_plain, write_csv
from cli.run_config import Command, RunConfig, load_config_file, report_from_json
from cli.commands import COMMANDS, CommandResult
from cli.runner import build_parser, resolve_config, run

__all__ = [
    "parse_map_expression",
    "Report",
    "emit_plot_data",
    "to_plain",
    "write_csv",
    "Command",
    "RunConfig",
    "load_config_file",
    "report_from_json",
    "COMMANDS",
    "CommandResult",
    "build_parser",
    "resolve_config",
    "run",
]
