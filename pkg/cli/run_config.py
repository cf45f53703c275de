"""
실행 설정 - 명령행 인자, --config 파일(dotenv 형식), 기본값을 병합
"""

from dataclasses import dataclass, asdict, fields
from enum import Enum
from typing import Any, Dict, Optional
import json
import logging

from dotenv import dotenv_values

from core.config import CLASSIFIER_CONFIG, CLI_CONFIG, QUADRATURE_CONFIG
from core.errors import ParameterError

logger = logging.getLogger(__name__)


class Command(Enum):
    DILAT = "dilat"
    BOUNDS = "bounds"
    INTEGRALS = "integrals"
    CLASSIFY = "classify"
    CHECK = "check"
    CATALOG = "catalog"


OUTPUT_FORMATS = ("json", "csv")


@dataclass
class RunConfig:
    """한 번의 실행 설정"""
    command: str
    map: str = "catalog:identity"
    n: int = 3
    r: float = 0.1
    R: float = 1.0
    sphere_level: int = QUADRATURE_CONFIG["sphere_level"]
    radial_m: int = QUADRATURE_CONFIG["radial_nodes"]
    k_min: int = QUADRATURE_CONFIG["k_min"]
    k_max: int = QUADRATURE_CONFIG["k_max"]
    seed: int = QUADRATURE_CONFIG["seed"]
    output: Optional[str] = None
    format: str = CLI_CONFIG["default_format"]
    strict: bool = False
    threads: int = 0
    sweep: int = 0
    plot_data: Optional[str] = None
    dilat_radial: int = 16
    dual: bool = False
    K: Optional[float] = None

    def validate(self) -> "RunConfig":
        """계산 전에 모든 범위를 검증"""
        try:
            Command(self.command)
        except ValueError:
            raise ParameterError(f"unknown command '{self.command}'")
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError(f"n must be an integer ≥ 2, got {self.n}")
        if not (0.0 < self.r < self.R <= 1.0):
            raise ParameterError(f"radii must satisfy 0 < r < R ≤ 1, got r={self.r}, R={self.R}")
        if self.sphere_level < 1:
            raise ParameterError(f"sphere level must be ≥ 1, got {self.sphere_level}")
        if self.radial_m < 8:
            raise ParameterError(f"radial node count must be ≥ 8, got {self.radial_m}")
        if not (1 <= self.k_min < self.k_max <= 60):
            raise ParameterError(f"need 1 ≤ k_min < k_max ≤ 60, got k_min={self.k_min}, k_max={self.k_max}")
        if self.k_max - self.k_min + 1 < CLASSIFIER_CONFIG["window"]:
            raise ParameterError(f"ε range k={self.k_min}..{self.k_max} is shorter than the "
                                 f"classification window ({CLASSIFIER_CONFIG['window']} points)")
        if self.format not in OUTPUT_FORMATS:
            raise ParameterError(f"format must be one of {OUTPUT_FORMATS}, got '{self.format}'")
        if self.threads < 0 or self.sweep < 0 or self.dilat_radial < 1:
            raise ParameterError("threads and sweep must be ≥ 0, dilat_radial ≥ 1")
        if self.K is not None and self.K < 1.0:
            raise ParameterError(f"K must be ≥ 1, got {self.K}")
        return self

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "RunConfig":
        """문자열 값도 필드 타입으로 변환"""
        known = {f.name: f for f in fields(cls)}
        values = {}
        for key, raw in payload.items():
            if key not in known:
                raise ParameterError(f"unknown configuration key '{key}'")
            values[key] = _coerce(key, raw, cls)
        if "command" not in values:
            raise ParameterError("configuration has no command")
        return cls(**values)


def _coerce(key: str, raw: Any, cls=RunConfig) -> Any:
    if raw is None or not isinstance(raw, str):
        return raw
    default = {f.name: f.default for f in fields(cls)}.get(key)
    text = raw.strip()
    if key in ("r", "R", "K"):
        return float(text) if text else None
    if key in ("output", "plot_data") or key in ("command", "map", "format"):
        return text or None
    if isinstance(default, bool):
        return text.lower() in ("1", "true", "yes", "on")
    if isinstance(default, int):
        return int(text)
    return text


def load_config_file(path: str) -> Dict[str, Any]:
    """
    dotenv 형식 KEY=VALUE 설정 파일 읽기

    Args:
        path: 설정 파일 경로

    Returns:
        Dict: RunConfig 필드명 → 변환된 값
    """
    raw = dotenv_values(path)
    known = {f.name for f in fields(RunConfig)}
    values = {}
    for key, value in raw.items():
        name = key if key in known else key.lower()
        if name not in known:
            raise ParameterError(f"unknown key '{key}' in config file {path}")
        try:
            values[name] = _coerce(name, value)
        except ValueError as e:
            raise ParameterError(f"invalid value for '{key}' in config file {path}: {e}")
    logger.debug(f"설정 파일 {path}: {sorted(values)}")
    return values


def report_from_json(text: str) -> RunConfig:
    """JSON 리포트의 설정 반향으로부터 RunConfig 복원"""
    payload = json.loads(text)
    if "config" not in payload:
        raise ParameterError("report has no config section")
    return RunConfig.from_dict(payload["config"])
