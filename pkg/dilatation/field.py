"""
점 배열 위의 팽창 계수장

점들을 청크로 나누어 워커에서 평가하고 입력 순서대로 이어 붙입니다.
비정칙점의 계수는 NaN 으로 채웁니다.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional
import logging

import numpy as np

from core.errors import IrregularPointError
from core.workers import map_in_order
from dilatation.pointwise import dual_dilatation, log_dilatations, regularity_mask
from mapping.mapping_spec import MappingSpec, check_domain, scaled_jacobian

logger = logging.getLogger(__name__)

CHUNK_POINTS = 65536


@dataclass
class DilatationField:
    """점 배열 (..., n) 위의 K, L, D, Q, log|det J|, 정칙 마스크"""
    points: np.ndarray
    K: np.ndarray
    L: np.ndarray
    D: np.ndarray
    Q: np.ndarray
    log_det: np.ndarray
    regular: np.ndarray
    T: Optional[np.ndarray] = None

    @property
    def irregular_fraction(self) -> float:
        return float(1.0 - np.mean(self.regular)) if self.regular.size else 0.0

    def summary(self) -> Dict[str, Any]:
        """정칙점 기준 최솟값/최댓값 요약"""
        summary = {"points": int(self.regular.size), "irregular_fraction": self.irregular_fraction}
        names = ["K", "L", "D", "Q"] + (["T"] if self.T is not None else [])
        for name in names:
            values = getattr(self, name)[self.regular]
            if values.size:
                summary[name] = {"min": float(np.min(values)), "max": float(np.max(values))}
        return summary


def _evaluate_chunk(mapping: MappingSpec, points: np.ndarray) -> Dict[str, np.ndarray]:
    _, matrix = scaled_jacobian(mapping, points, strict=False)
    regular = regularity_mask(matrix)
    directions = points / np.linalg.norm(points, axis=-1, keepdims=True)
    safe = np.where(regular[..., None, None], matrix, np.eye(mapping.dimension))
    with np.errstate(all="ignore"):
        logs = log_dilatations(safe, directions)
    result = {"regular": regular, "log_det": np.where(regular, logs["log_det"], np.nan)}
    for name in ("K", "L", "D", "Q"):
        result[name] = np.where(regular, np.exp(logs[name]), np.nan)
    return result


def dilatations_at(mapping: MappingSpec, points: np.ndarray) -> Dict[str, np.ndarray]:
    """
    점 배열의 K, L, D, Q (단일 스레드, 청크 하나)

    Args:
        mapping: 대상 사상
        points: (..., n) 점 배열

    Returns:
        Dict: "K", "L", "D", "Q", "log_det", "regular"
    """
    points = check_domain(mapping, points)
    shape = points.shape[:-1]
    flat = _evaluate_chunk(mapping, points.reshape(-1, mapping.dimension))
    return {name: values.reshape(shape) for name, values in flat.items()}


def sample_field(mapping: MappingSpec, points, workers: int = 0, with_dual: bool = False,
                 chunk_points: int = CHUNK_POINTS) -> DilatationField:
    """
    점 배열 위의 팽창 계수장 계산

    Args:
        mapping: 대상 사상
        points: (..., n) 점 배열, 0 < |x| < 1
        workers: 워커 수 (0 이면 자동)
        with_dual: 쌍대 팽창 T 도 계산 (점마다 다중 시작 탐색)
        chunk_points: 청크당 점 수

    Returns:
        DilatationField: 입력과 같은 모양의 계수 배열
    """
    points = check_domain(mapping, points)
    shape = points.shape[:-1]
    flat = points.reshape(-1, mapping.dimension)
    chunks = [flat[start:start + chunk_points] for start in range(0, len(flat), chunk_points)]

    parts = map_in_order(lambda chunk: _evaluate_chunk(mapping, chunk), chunks, workers)
    merged = {
        name: (np.concatenate([part[name] for part in parts]) if parts else np.empty(0))
        for name in ("K", "L", "D", "Q", "log_det", "regular")
    }

    T = None
    if with_dual:
        T = np.full(len(flat), np.nan)
        for index in np.flatnonzero(merged["regular"]):
            x = flat[index]
            _, matrix = scaled_jacobian(mapping, x)
            try:
                T[index] = dual_dilatation(matrix, x / np.linalg.norm(x)).T
            except IrregularPointError:
                merged["regular"][index] = False
        T = T.reshape(shape)

    field = DilatationField(
        points=points,
        K=merged["K"].reshape(shape),
        L=merged["L"].reshape(shape),
        D=merged["D"].reshape(shape),
        Q=merged["Q"].reshape(shape),
        log_det=merged["log_det"].reshape(shape),
        regular=merged["regular"].astype(bool).reshape(shape),
        T=T,
    )
    if field.irregular_fraction > 0.0:
        logger.warning(f"'{mapping.label}': 비정칙점 비율 {field.irregular_fraction:.4%}")
    logger.debug(f"'{mapping.label}' 팽창 계수장 {len(flat)}점 계산 완료")
    return field
