"""
cavimod 명령행 실행기

사용법:
    python main.py classify --map "catalog:f1(alpha=0.5)" --n 3
    python main.py bounds --map catalog:identity --n 3 --r 0.1 --R 1
    python main.py check --map "x1, x2, x3" --n 3 --format csv
    python main.py catalog

우선순위: 명령행 플래그 > --config 파일 > 기본값
종료 코드: 0 성공, 2 검증 오류, 3 판정 불가(--strict classify), 1 예상치 못한 오류
"""

import argparse
import sys
import time
from typing import Any, Dict, List, Optional
import logging

from cli.commands import COMMANDS, CommandResult
from cli.expression import parse_map_expression
from cli.report import Report, emit_plot_data
from cli.run_config import Command, RunConfig, load_config_file, OUTPUT_FORMATS
from core.config import TOOL_NAME, TOOL_VERSION
from core.errors import CavimodError, ParameterError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_VALIDATION = 2
EXIT_UNDETERMINED = 3


class CavimodArgumentParser(argparse.ArgumentParser):
    """인자 오류를 SystemExit 대신 ParameterError 로"""

    def error(self, message):
        raise ParameterError(f"invalid arguments: {message}")


def _flag(parser: argparse.ArgumentParser, *names: str, **kwargs):
    parser.add_argument(*names, default=None, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    """명령행 파서 - 값 플래그의 기본값은 모두 None (설정 파일 병합용)"""
    parser = CavimodArgumentParser(
        prog=TOOL_NAME,
        description="Dilatations, ring modulus bounds and cavitation tests for maps of the punctured unit ball",
        allow_abbrev=False,
    )
    parser.add_argument("command", choices=[command.value for command in Command])
    _flag(parser, "--map", help="catalog:NAME(key=value,...) or coordinate expressions 'e1, ..., en'")
    _flag(parser, "--n", type=int, help="dimension n ≥ 2")
    _flag(parser, "--r", type=float, help="inner radius")
    _flag(parser, "--R", type=float, help="outer radius (≤ 1)")
    _flag(parser, "--sphere-level", dest="sphere_level", type=int)
    _flag(parser, "--radial-m", dest="radial_m", type=int)
    _flag(parser, "--k-min", dest="k_min", type=int, help="largest ε is 2^-k_min")
    _flag(parser, "--k-max", dest="k_max", type=int, help="smallest ε is 2^-k_max")
    _flag(parser, "--seed", type=int)
    _flag(parser, "--output", help="write the report to this path instead of stdout")
    _flag(parser, "--format", choices=OUTPUT_FORMATS)
    _flag(parser, "--threads", type=int, help="worker count (0 = auto, capped by CAVIMOD_THREADS)")
    _flag(parser, "--sweep", type=int, help="bounds: number of log-spaced inner radii")
    _flag(parser, "--plot-data", dest="plot_data", help="write plot CSV to this path")
    _flag(parser, "--dilat-radial", dest="dilat_radial", type=int, help="dilat: radial sample count")
    _flag(parser, "--K", type=float, help="check: constant for the fundamental inequality")
    _flag(parser, "--strict", action="store_const", const=True, help="classify: exit 3 on Undetermined")
    _flag(parser, "--dual", action="store_const", const=True, help="dilat: also compute T")
    _flag(parser, "--config", dest="config_file", help="KEY=VALUE run configuration file")
    parser.add_argument("--verbose", "-v", action="store_true", help="DEBUG logging")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """
    플래그, 설정 파일, 기본값을 병합하여 검증된 RunConfig 생성

    Args:
        args: build_parser() 결과

    Returns:
        RunConfig: 검증된 실행 설정
    """
    values: Dict[str, Any] = {}
    if args.config_file:
        values.update(load_config_file(args.config_file))
    for key, value in vars(args).items():
        if key in ("config_file", "verbose") or value is None:
            continue
        values[key] = value
    values["command"] = args.command
    return RunConfig.from_dict(values).validate()


def _write(text: str, path: Optional[str]):
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"💾 리포트 저장: {path}", file=sys.stderr)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def execute(config: RunConfig) -> CommandResult:
    """사상을 해석하고 명령 실행"""
    mapping = None
    if config.command != Command.CATALOG.value:
        mapping = parse_map_expression(config.map, config.n)
    return COMMANDS[config.command](config, mapping)


def run(argv: Optional[List[str]] = None) -> int:
    """
    명령행 실행

    Args:
        argv: 인자 목록 (없으면 sys.argv[1:])

    Returns:
        int: 종료 코드
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    started = time.perf_counter()
    report = Report(command=argv[0] if argv else "", config={})
    config: Optional[RunConfig] = None
    exit_code = EXIT_OK

    try:
        args = build_parser().parse_args(argv)
        config = resolve_config(args)
        report.command = config.command
        report.config = config.to_dict()
        print(f"🚀 {TOOL_NAME} {TOOL_VERSION}: {config.command} ({config.map}, n={config.n})", file=sys.stderr)

        result = execute(config)
        report.results = result.results
        report.table = result.table
        report.warnings = result.warnings
        report.grid = result.grid

        for warning in result.warnings:
            print(f"⚠️ {warning}", file=sys.stderr)
        if result.verdict is not None:
            print(f"🎯 판정: {result.verdict}", file=sys.stderr)
            if config.strict and result.verdict == "Undetermined":
                exit_code = EXIT_UNDETERMINED
        if config.plot_data:
            emit_plot_data(report, config.plot_data)
    except CavimodError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {e}", file=sys.stderr)
        report.errors.append(e.to_dict())
        exit_code = e.exit_code if e.exit_code != EXIT_OK else EXIT_UNEXPECTED
    except Exception as e:
        logger.exception("예상치 못한 오류")
        print(f"💥 예상치 못한 오류: {e}", file=sys.stderr)
        report.errors.append({"error_type": type(e).__name__, "error_message": str(e)})
        exit_code = EXIT_UNEXPECTED

    report.timing = {"seconds": time.perf_counter() - started}
    output = config.output if config is not None else None
    try:
        # 오류 리포트는 형식과 무관하게 JSON
        if config is not None and config.format == "csv" and not report.errors:
            _write(report.to_csv(), output)
        else:
            _write(report.to_json(), output)
    except OSError as e:
        print(f"❌ 리포트를 쓸 수 없습니다: {e}", file=sys.stderr)
        return EXIT_UNEXPECTED

    if exit_code == EXIT_OK:
        print(f"✅ 완료 ({report.timing['seconds']:.2f}s)", file=sys.stderr)
    return exit_code
