"""
링 모듈러스 부등식 점검

- 왜곡 부등식:  log(m_f(R)/M_f(r)) − log(R/r) ≤ (1/ω_{n−1}) ∫_A (L_f − 1)/|x|ⁿ dm
- 기본 부등식:  mo f(A(r,R)) ≤ (1/ω_{n−1}) ∫_A L_f/|x|ⁿ dm ≤ K·log(R/r)

잔차는 (우변 − 좌변) 이며 음이 아니면 부등식이 성립합니다.
L_f 적분은 m/2 격자 값과 Richardson 외삽하고, 보정량 크기를 판정 허용 오차에 더합니다.
"""

from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional, Tuple
import logging

import numpy as np

from core.errors import DomainError
from mapping.mapping_spec import MappingSpec
from modulus.bounds import boundary_radius, sphere_extrema
from modulus.sampling import GridMoments, annulus_grid, grid_moments
from quadrature.grids import QuadratureGrid, build_grid, sphere_area

logger = logging.getLogger(__name__)

RESIDUAL_FACTOR = 1e-6


@dataclass
class InequalityCheck:
    """부등식 하나의 점검 결과"""
    name: str
    r: float
    R: float
    lhs: float
    rhs: float
    K: Optional[float] = None
    quadrature_error: float = 0.0

    @property
    def residual(self) -> float:
        return self.rhs - self.lhs

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.lhs), abs(self.rhs))

    @property
    def holds(self) -> bool:
        return self.residual >= -(RESIDUAL_FACTOR * self.scale + self.quadrature_error)

    def __float__(self) -> float:
        return float(self.residual)

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload.update({"residual": self.residual, "scale": self.scale, "holds": self.holds})
        return payload


def _check_interval(r: float, R: float):
    if not (0.0 < r < R <= 1.0):
        raise DomainError(f"annulus radii must satisfy 0 < r < R ≤ 1, got r={r!r}, R={R!r}")


def _mean_log_integral(moments, key: str) -> float:
    # (1/ω) Σ_u w_u Σ_t X(tu)·Δ  =  (1/ω) ∫_A X/|x|ⁿ dm
    grid = moments.grid
    return float(np.sum(grid.sphere_weights * moments.direction_total(key)) / sphere_area(grid.n))


def _extrapolated_log_integral(mapping: MappingSpec, moments: GridMoments, key: str,
                               workers: int) -> Tuple[float, float]:
    """
    로그 중점 규칙 값을 m/2 격자 값과 Richardson 외삽

    Returns:
        Tuple: (외삽값, 오차 추정 |보정량|) - m < 16 이면 보정 없음
    """
    fine = _mean_log_integral(moments, key)
    grid = moments.grid
    if grid.radial_m < 16:
        return fine, 0.0
    coarse_grid = build_grid(grid.n, grid.r, grid.R, grid.sphere_level, grid.radial_m // 2, grid.seed)
    coarse = _mean_log_integral(grid_moments(mapping, coarse_grid, workers), key)
    correction = (fine - coarse) / 3.0
    return fine + correction, abs(correction)


def check_bgmv(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid] = None,
               workers: int = 0) -> InequalityCheck:
    """
    왜곡 부등식 점검

    Args:
        mapping: 대상 사상
        r, R: 0 < r < R ≤ 1 (R = 1 이면 구면 표본은 1 − inset)
        grid: 적분 격자

    Returns:
        InequalityCheck: residual = 우변 − 좌변
    """
    _check_interval(r, R)
    grid = annulus_grid(mapping, r, R, grid)
    moments = grid_moments(mapping, grid, workers)
    log_ratio = float(np.log(R / r))

    _, outer_min = sphere_extrema(mapping, boundary_radius(R), grid)
    inner_max, _ = sphere_extrema(mapping, r, grid)
    lhs = float(np.log(outer_min / inner_max)) - log_ratio
    integral, error = _extrapolated_log_integral(mapping, moments, "L", workers)
    rhs = integral - float(np.sum(grid.radial_log_weights))

    check = InequalityCheck(name="distortion", r=r, R=R, lhs=lhs, rhs=rhs, quadrature_error=error)
    logger.info(f"'{mapping.label}' 왜곡 부등식 ({r:g}, {R:g}): residual={check.residual:.6g}")
    return check


def check_fundamental(mapping: MappingSpec, r: float, R: float, K: Optional[float] = None,
                      grid: Optional[QuadratureGrid] = None, workers: int = 0) -> InequalityCheck:
    """
    기본 부등식 점검: K·log(R/r) − (1/ω)∫ L_f/|x|ⁿ dm

    Args:
        mapping: 대상 사상
        r, R: 환형 반지름
        K: ess-sup L_f 이상 값 (없으면 표본 최댓값)
        grid: 적분 격자

    Returns:
        InequalityCheck: residual = K·log(R/r) − 적분 상한
    """
    _check_interval(r, R)
    grid = annulus_grid(mapping, r, R, grid)
    moments = grid_moments(mapping, grid, workers)
    if K is None:
        K = moments.L_max
        logger.debug(f"K 를 표본 최댓값 {K:.6g} 로 사용")
    integral, error = _extrapolated_log_integral(mapping, moments, "L", workers)
    check = InequalityCheck(
        name="fundamental", r=r, R=R,
        lhs=integral,
        quadrature_error=error,
        rhs=float(K) * float(np.log(R / r)),
        K=float(K),
    )
    logger.info(f"'{mapping.label}' 기본 부등식 ({r:g}, {R:g}): residual={check.residual:.6g}")
    return check
