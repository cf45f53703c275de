"""
ε → 0 이상적분 극한 분류

마지막 window 개의 부분값에 대해 다음 순서로 판정합니다.
1. 값 자체가 계수 ≤ contraction 으로 기하 감소 → TendsToZero
2. 차분이 모두 0 → ConvergesTo(마지막 값)
3. 차분이 계수 ≤ contraction 으로 기하 수축 → 상수 + c·ε^β 외삽
4. log|v| 를 log(1/ε) 와 log log(1/ε) 에 대해 직선 적합, 잔차가 작은 쪽의 기울기로 판정
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from core.config import CLASSIFIER_CONFIG
from core.errors import ClassificationError, ParameterError

logger = logging.getLogger(__name__)


class VerdictKind(Enum):
    """극한 판정 종류"""
    CONVERGES_TO = "ConvergesTo"
    DIVERGES_TO_INFINITY = "DivergesToInfinity"
    TENDS_TO_ZERO = "TendsToZero"
    INCONCLUSIVE = "Inconclusive"


class LimitDirection(Enum):
    """부분값의 기대 단조성"""
    INNER_INTEGRAL = "inner-integral"  # ε 가 줄면 비감소
    OUTER_VALUE = "outer-value"        # ε 가 줄면 비증가


@dataclass
class LimitVerdict:
    """극한 판정 결과"""
    kind: VerdictKind
    value: Optional[float] = None
    evidence: List[Tuple[float, float]] = field(default_factory=list)
    fit_exponent: Optional[float] = None
    model: str = ""
    note: str = ""

    def __post_init__(self):
        if self.kind == VerdictKind.CONVERGES_TO:
            if self.value is None or not np.isfinite(self.value):
                raise ParameterError("ConvergesTo verdict needs a finite value")
        elif self.kind != VerdictKind.INCONCLUSIVE:
            self.value = None

    @property
    def best_value(self) -> float:
        """판정에 맞는 대표값 (발산은 inf, 0 수렴은 0)"""
        if self.kind == VerdictKind.CONVERGES_TO:
            return float(self.value)
        if self.kind == VerdictKind.DIVERGES_TO_INFINITY:
            return float("inf")
        if self.kind == VerdictKind.TENDS_TO_ZERO:
            return 0.0
        return float(self.evidence[-1][1]) if self.evidence else float("nan")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "value": self.value,
            "fit_exponent": self.fit_exponent,
            "model": self.model,
            "note": self.note,
            "evidence": [{"epsilon": e, "value": v} for e, v in self.evidence],
        }


def _linear_fit(x: np.ndarray, y: np.ndarray) -> Tuple[float, float]:
    """(기울기, 잔차 제곱합)"""
    coeffs, residuals, _, _, _ = np.polyfit(x, y, 1, full=True)
    residual = float(residuals[0]) if len(residuals) else 0.0
    return float(coeffs[0]), residual


def limit_classify(partials: Sequence[Tuple[float, float]],
                   direction: LimitDirection = LimitDirection.INNER_INTEGRAL,
                   config: Optional[Dict[str, Any]] = None) -> LimitVerdict:
    """
    부분값 수열 (ε_k, v_k) 의 ε → 0 극한 분류

    Args:
        partials: ε 가 감소하는 순서의 (ε, 부분값) 목록
        direction: 기대 단조성 (LimitDirection 또는 그 문자열 값)
        config: CLASSIFIER_CONFIG 덮어쓰기

    Returns:
        LimitVerdict: 판정 결과
    """
    settings = dict(CLASSIFIER_CONFIG)
    settings.update(config or {})
    window = int(settings["window"])
    contraction = float(settings["contraction"])
    direction = LimitDirection(direction)

    evidence = [(float(e), float(v)) for e, v in partials]
    if len(evidence) < max(window, 3):
        raise ClassificationError(f"need at least {window} ε points, got {len(evidence)}")

    eps = np.array([e for e, _ in evidence[-window:]])
    values = np.array([v for _, v in evidence[-window:]])
    if np.any(eps <= 0.0) or np.any(np.diff(eps) >= 0.0):
        raise ParameterError("ε values must be positive and strictly decreasing")

    def verdict(kind: VerdictKind, **kwargs) -> LimitVerdict:
        return LimitVerdict(kind=kind, evidence=evidence, **kwargs)

    increasing = direction == LimitDirection.INNER_INTEGRAL
    if not np.all(np.isfinite(values)):
        if increasing and values[-1] == np.inf:
            return verdict(VerdictKind.DIVERGES_TO_INFINITY, model="overflow", note="partial value overflowed")
        return verdict(VerdictKind.INCONCLUSIVE, note="non-finite partial values")

    scale = float(np.max(np.abs(values)))
    if scale == 0.0:
        return verdict(VerdictKind.TENDS_TO_ZERO, model="zero", note="all partial values vanish")

    diffs = np.diff(values)
    slack = settings["zero_tolerance"] * scale
    if (increasing and np.any(diffs < -slack)) or (not increasing and np.any(diffs > slack)):
        return verdict(VerdictKind.INCONCLUSIVE,
                       note=f"partials are not monotone as expected for {direction.value}")

    # 1. 값의 기하 감소
    if np.all(values > 0.0):
        ratios = values[1:] / values[:-1]
        if np.all(ratios <= contraction):
            q = float(np.exp(np.mean(np.log(ratios))))
            return verdict(VerdictKind.TENDS_TO_ZERO, fit_exponent=-np.log2(q), model="geometric-decay")

    # 2. 정체
    if np.all(np.abs(diffs) <= slack):
        return verdict(VerdictKind.CONVERGES_TO, value=float(values[-1]), model="constant")

    # 3. 차분의 기하 수축 → 상수 + c·ε^β
    if np.all(diffs != 0.0) and (np.all(diffs > 0.0) or np.all(diffs < 0.0)):
        diff_ratios = diffs[1:] / diffs[:-1]
        if np.all((diff_ratios > 0.0) & (diff_ratios <= contraction)):
            q = float(np.exp(np.mean(np.log(diff_ratios))))
            limit = float(values[-1] + diffs[-1] * q / (1.0 - q))
            beta = float(-np.log2(q))
            if abs(limit) <= settings["zero_tolerance"] * scale:
                return verdict(VerdictKind.TENDS_TO_ZERO, fit_exponent=beta, model="constant+power")
            return verdict(VerdictKind.CONVERGES_TO, value=limit, fit_exponent=beta, model="constant+power")

    # 4. 멱 / 로그-멱 성장 모델
    if not (np.all(values > 0.0) or np.all(values < 0.0)):
        return verdict(VerdictKind.INCONCLUSIVE, note="partial values change sign")
    y = np.log(np.abs(values))
    log_inv_eps = np.log(1.0 / eps)
    fits = {"power": _linear_fit(log_inv_eps, y)}
    if np.all(log_inv_eps > 1.0):
        fits["log-power"] = _linear_fit(np.log(log_inv_eps), y)
    model, (slope, _) = min(fits.items(), key=lambda item: item[1][1])

    tolerance = settings["slope_tolerance"]
    growing = np.all(diffs > 0.0) if values[-1] > 0 else np.all(diffs < 0.0)
    if slope > tolerance and growing and increasing:
        return verdict(VerdictKind.DIVERGES_TO_INFINITY, fit_exponent=slope, model=model)
    if slope < -tolerance and not growing and not increasing:
        return verdict(VerdictKind.TENDS_TO_ZERO, fit_exponent=slope, model=model)

    logger.debug(f"극한 판정 불가: model={model}, slope={slope:.4f}, direction={direction.value}")
    return verdict(VerdictKind.INCONCLUSIVE, fit_exponent=slope, model=model,
                   note="no model dominates within the classification window")
