"""
구면 링 모듈러스와 곡선족 모듈러스 변환, Teichmüller 상수
"""

from enum import Enum
from typing import Tuple
import logging

import numpy as np

from core.errors import DomainError, ParameterError
from quadrature.grids import sphere_area

logger = logging.getLogger(__name__)


class ConversionDirection(Enum):
    RING_TO_FAMILY = "ring_to_family"
    FAMILY_TO_RING = "family_to_ring"


def ring_modulus_spherical(r: float, R: float) -> float:
    """mo A(r, R) = log(R/r)"""
    if not (0.0 < r < R):
        raise DomainError(f"spherical ring needs 0 < r < R, got r={r!r}, R={R!r}")
    return float(np.log(R / r))


def modulus_conversions(value: float, direction, n: int) -> float:
    """
    링 모듈러스 ↔ 곡선족 모듈러스

    M(Γ) = ω_{n−1}/mo^{n−1},  mo = (ω_{n−1}/M(Γ))^{1/(n−1)}

    Args:
        value: 변환할 값 (> 0)
        direction: ConversionDirection 또는 "ring_to_family" / "family_to_ring"
        n: 차원

    Returns:
        float: 변환값
    """
    direction = ConversionDirection(direction)
    if int(n) != n or n < 2:
        raise ParameterError(f"dimension must be an integer ≥ 2, got {n}")
    if not (value > 0.0) or not np.isfinite(value):
        raise ParameterError(f"modulus must be positive and finite, got {value!r}")
    area = sphere_area(n)
    if direction == ConversionDirection.RING_TO_FAMILY:
        return float(area / value ** (n - 1))
    return float((area / value) ** (1.0 / (n - 1)))


def family_interval_to_ring(lower: float, upper: float, n: int) -> Tuple[float, float]:
    """곡선족 모듈러스 구간 [lower, upper] → 링 모듈러스 구간 (순서 반전)"""
    area = sphere_area(n)
    mo_low = (area / upper) ** (1.0 / (n - 1)) if upper > 0.0 else float("inf")
    mo_high = (area / lower) ** (1.0 / (n - 1)) if lower > 0.0 else float("inf")
    return float(mo_low), float(mo_high)


def teichmuller_constant_bound(n: int) -> Tuple[float, bool]:
    """
    분리 링 정리의 상수 A_n

    Args:
        n: 차원 (≥ 2)

    Returns:
        Tuple: (값, 정확값 여부) - n=2 는 π (정확), n≥3 은 상한
    """
    if int(n) != n or n < 2:
        raise ParameterError(f"dimension must be an integer ≥ 2, got {n}")
    if n == 2:
        return float(np.pi), True
    value = 2.0 * np.log1p(np.sqrt(2.0)) + 2.0 * np.log(2.0) / (n - 1) + 2.0 * n * (n - 2) / (n - 1)
    return float(value), False
