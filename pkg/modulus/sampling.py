"""
격자 위 팽창 계수의 방향별 / 반경별 부분합

모듈러스 상하한, 공동화 적분, 부등식 점검은 모두 다음 두 종류의 합으로 계산됩니다.
- 방향 u 별 반경 합   Σ_t X(tu)·Δ        (블록 단위, 블록 = 반경 노드 묶음)
- 반경 t 별 구면 합   Σ_u X(tu)·w_u
"""

from dataclasses import dataclass, field
from typing import Dict, Optional
import logging

import numpy as np

from core.config import QUADRATURE_CONFIG
from core.errors import IntegrationError
from core.workers import map_in_order
from dilatation.field import CHUNK_POINTS, dilatations_at
from mapping.mapping_spec import MappingSpec
from quadrature.grids import QuadratureGrid, build_grid

logger = logging.getLogger(__name__)

DIRECTION_KEYS = ("Q", "K_root", "L")
RADIAL_KEYS = ("D", "L")


@dataclass
class GridMoments:
    """격자 부분합"""
    grid: QuadratureGrid
    block_rows: int
    direction_sums: Dict[str, np.ndarray] = field(default_factory=dict)  # (blocks, N)
    radial_sums: Dict[str, np.ndarray] = field(default_factory=dict)     # (m,)
    L_max: float = 1.0
    irregular_fraction: float = 0.0

    def direction_total(self, key: str) -> np.ndarray:
        """(N,) 전체 반경 합"""
        return np.sum(self.direction_sums[key], axis=0)


def annulus_grid(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid] = None) -> QuadratureGrid:
    """(r, R) 격자 - 주어진 격자의 단계와 시드를 유지"""
    if grid is None:
        return build_grid(mapping.dimension, r, R)
    if grid.n == mapping.dimension and grid.r == r and grid.R == R:
        return grid
    return build_grid(mapping.dimension, r, R, grid.sphere_level, grid.radial_m, grid.seed)


def grid_moments(mapping: MappingSpec, grid: QuadratureGrid, workers: int = 0,
                 tolerance: Optional[float] = None) -> GridMoments:
    """
    격자 전체의 팽창 계수 부분합 계산

    octave_grid 격자이면 블록이 옥타브와 일치합니다.

    Args:
        mapping: 대상 사상
        grid: 적분 격자
        workers: 워커 수
        tolerance: 허용 비정칙 비율

    Returns:
        GridMoments: 부분합
    """
    tolerance = QUADRATURE_CONFIG["irregular_tolerance"] if tolerance is None else tolerance
    n = grid.n
    rows = grid.octave_cells or max(1, CHUNK_POINTS // grid.sphere_count)
    blocks = [slice(start, min(start + rows, grid.radial_count)) for start in range(0, grid.radial_count, rows)]

    def reduce_block(block: slice) -> Dict[str, np.ndarray]:
        values = dilatations_at(mapping, grid.points(block))
        regular = values["regular"]
        log_w = grid.radial_log_weights[block][:, None]
        zeroed = {name: np.where(regular, values[name], 0.0) for name in ("K", "L", "D", "Q")}
        return {
            "Q": np.sum(zeroed["Q"] * log_w, axis=0),
            "K_root": np.sum(np.where(regular, values["K"] ** (1.0 / (n - 1)), 0.0) * log_w, axis=0),
            "L": np.sum(zeroed["L"] * log_w, axis=0),
            "radial_D": np.sum(zeroed["D"] * grid.sphere_weights, axis=-1),
            "radial_L": np.sum(zeroed["L"] * grid.sphere_weights, axis=-1),
            "L_max": np.max(zeroed["L"]) if zeroed["L"].size else 1.0,
            "irregular": np.count_nonzero(~regular),
        }

    parts = map_in_order(reduce_block, blocks, workers)
    irregular = sum(int(part["irregular"]) for part in parts)
    fraction = irregular / float(grid.radial_count * grid.sphere_count)
    if fraction > tolerance:
        raise IntegrationError(
            f"'{mapping.label}': {fraction:.3%} of grid nodes are irregular (tolerance {tolerance:.3%})", fraction
        )
    if irregular:
        logger.warning(f"'{mapping.label}': 비정칙 노드 {irregular}개 ({fraction:.4%}) 제외")

    moments = GridMoments(grid=grid, block_rows=rows, irregular_fraction=fraction)
    for key in DIRECTION_KEYS:
        moments.direction_sums[key] = np.stack([part[key] for part in parts])
    for key in RADIAL_KEYS:
        moments.radial_sums[key] = np.concatenate([part[f"radial_{key}"] for part in parts])
    moments.L_max = float(max(part["L_max"] for part in parts))
    logger.debug(f"'{mapping.label}' 격자 부분합 계산: {len(blocks)}개 블록, {grid.radial_count}×{grid.sphere_count} 노드")
    return moments
