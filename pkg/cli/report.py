"""
실행 리포트와 JSON / CSV 출력
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence
import csv
import io
import json
import logging
import math

import numpy as np

from core.config import CLI_CONFIG, TOOL_NAME, TOOL_VERSION

logger = logging.getLogger(__name__)

EVIDENCE_COLUMNS = ["epsilon", "IQ", "IK", "ID", "IL"]
SWEEP_COLUMNS = ["r", "lower", "upper", "exact"]


def to_plain(value: Any) -> Any:
    """numpy 값, 무한대, NaN 을 JSON 으로 쓸 수 있는 값으로 변환"""
    if isinstance(value, dict):
        return {str(key): to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return [to_plain(item) for item in value.tolist()]
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        number = float(value)
        if math.isnan(number):
            return "nan"
        if math.isinf(number):
            return "inf" if number > 0 else "-inf"
        return number
    return value


def format_cell(value: Any, digits: Optional[int] = None) -> str:
    """CSV 셀 - 실수는 유효숫자 17자리"""
    digits = CLI_CONFIG["csv_digits"] if digits is None else digits
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{digits}g}"
    return str(value)


def write_csv(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    """딕셔너리 행 목록을 CSV 텍스트로"""
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


@dataclass
class Report:
    """명령 실행 결과"""
    command: str
    config: Dict[str, Any]
    results: Dict[str, Any] = field(default_factory=dict)
    table: List[Dict[str, Any]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    errors: List[Dict[str, Any]] = field(default_factory=list)
    grid: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return to_plain({
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "command": self.command,
            "config": self.config,
            "grid": self.grid,
            "results": self.results,
            "warnings": self.warnings,
            "errors": self.errors,
            "timing": self.timing,
        })

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_csv(self) -> str:
        return write_csv(self.table)


def emit_plot_data(report: Report, path: str) -> str:
    """
    외부 플로팅용 CSV 작성

    ε 증거표가 있으면 (epsilon, IQ, IK, ID, IL), 반지름 sweep 이 있으면
    (r, lower, upper, exact), 둘 다 없으면 헤더만 씁니다.

    Args:
        report: 실행 리포트
        path: 출력 경로

    Returns:
        str: 작성한 CSV 텍스트
    """
    results = report.results or {}
    if results.get("evidence"):
        text = write_csv(results["evidence"], EVIDENCE_COLUMNS)
    elif results.get("sweep"):
        text = write_csv(results["sweep"], SWEEP_COLUMNS)
    else:
        text = write_csv([], EVIDENCE_COLUMNS)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
    logger.info(f"플롯 데이터 저장: {path}")
    return text
