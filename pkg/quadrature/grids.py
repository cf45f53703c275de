"""
구면 / 반경 적분 격자

구면 규칙:
- n=2: 균등 원 규칙 (8·2^level 노드, 반 칸 오프셋)
- n=3: cosθ 방향 Gauss-Legendre × 균등 φ (극점 없음)
- n≥4: 정규분포 정규화 Monte Carlo, 대칭쌍 (u, −u), 시드 고정

반경 규칙은 log t 에 대해 균등한 칸의 기하 중점을 노드로 씁니다.
"""

from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional, Tuple
import logging

import numpy as np
from scipy.special import gammaln

from core.config import QUADRATURE_CONFIG
from core.errors import DomainError, IntegrationError, ParameterError

logger = logging.getLogger(__name__)


def sphere_area(n: int) -> float:
    """ω_{n−1} = 2π^{n/2}/Γ(n/2)"""
    return float(np.exp(np.log(2.0) + 0.5 * n * np.log(np.pi) - gammaln(0.5 * n)))


def sphere_nodes(n: int, level: Optional[int] = None, seed: Optional[int] = None,
                 monte_carlo_nodes: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    단위 구면 S^{n−1} 적분 노드와 가중치

    Args:
        n: 차원 (≥ 2)
        level: 세분 단계 (≥ 1)
        seed: Monte Carlo 시드 (n ≥ 4)
        monte_carlo_nodes: Monte Carlo 노드 수 (n ≥ 4, 짝수로 올림)

    Returns:
        Tuple: (nodes (N, n), weights (N,)), Σ weights = ω_{n−1}
    """
    level = QUADRATURE_CONFIG["sphere_level"] if level is None else int(level)
    seed = QUADRATURE_CONFIG["seed"] if seed is None else int(seed)
    if n < 2 or int(n) != n:
        raise ParameterError(f"dimension must be an integer ≥ 2, got {n}")
    if level < 1:
        raise ParameterError(f"sphere level must be ≥ 1, got {level}")

    area = sphere_area(n)
    if n == 2:
        count = 8 * 2 ** level
        angles = 2.0 * np.pi * (np.arange(count) + 0.5) / count
        nodes = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        weights = np.full(count, area / count)
        return nodes, weights

    if n == 3:
        n_theta = 4 * 2 ** level
        n_phi = 2 * n_theta
        cos_theta, gl_weights = np.polynomial.legendre.leggauss(n_theta)
        sin_theta = np.sqrt(1.0 - cos_theta ** 2)
        phi = 2.0 * np.pi * (np.arange(n_phi) + 0.5) / n_phi
        nodes = np.empty((n_theta, n_phi, 3))
        nodes[..., 0] = sin_theta[:, None] * np.cos(phi)[None, :]
        nodes[..., 1] = sin_theta[:, None] * np.sin(phi)[None, :]
        nodes[..., 2] = cos_theta[:, None]
        weights = np.repeat(gl_weights * (2.0 * np.pi / n_phi), n_phi)
        return nodes.reshape(-1, 3), weights

    count = QUADRATURE_CONFIG["monte_carlo_nodes"] if monte_carlo_nodes is None else int(monte_carlo_nodes)
    count = max(2, count + count % 2)
    rng = np.random.default_rng(seed)
    half = rng.standard_normal((count // 2, n))
    half /= np.linalg.norm(half, axis=-1, keepdims=True)
    nodes = np.concatenate([half, -half], axis=0)
    weights = np.full(count, area / count)
    logger.debug(f"S^{n - 1} Monte Carlo 규칙: {count}개 노드 (seed={seed})")
    return nodes, weights


def _check_interval(r: float, R: float):
    if not (0.0 < r < R <= 1.0):
        raise DomainError(f"annulus radii must satisfy 0 < r < R ≤ 1, got r={r!r}, R={R!r}")


def radial_nodes(r: float, R: float, m: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    (r, R) 위의 로그 균등 반경 노드

    Args:
        r, R: 0 < r < R ≤ 1
        m: 노드 수 (≥ 8)

    Returns:
        Tuple: (nodes, weights_linear, weights_log)
            weights_linear: 칸 길이 (Σ = R − r)
            weights_log: 로그 칸 폭 Δ (∫dt/t 에 대해 정확)
    """
    _check_interval(r, R)
    if int(m) != m or m < 8:
        raise ParameterError(f"radial node count must be an integer ≥ 8, got {m}")
    m = int(m)
    delta = np.log(R / r) / m
    nodes = r * np.exp((np.arange(m) + 0.5) * delta)
    weights_linear = nodes * (2.0 * np.sinh(0.5 * delta))
    weights_log = np.full(m, delta)
    return nodes, weights_linear, weights_log


@dataclass
class QuadratureGrid:
    """환형 A(r, R) 적분 격자"""
    n: int
    sphere_nodes: np.ndarray
    sphere_weights: np.ndarray
    radial_nodes: np.ndarray
    radial_weights: np.ndarray      # ∫ dt
    radial_log_weights: np.ndarray  # ∫ dt/t
    r: float
    R: float
    sphere_level: int
    radial_m: int
    seed: int
    octave_cells: Optional[int] = None  # octave_grid 에서만 설정

    @property
    def sphere_count(self) -> int:
        return len(self.sphere_weights)

    @property
    def radial_count(self) -> int:
        return len(self.radial_nodes)

    def points(self, radial_slice: slice = slice(None)) -> np.ndarray:
        """(radial, sphere, n) 격자점 t·u"""
        t = self.radial_nodes[radial_slice]
        return t[:, None, None] * self.sphere_nodes[None, :, :]

    def grid_identity(self) -> Dict[str, Any]:
        """리포트용 격자 식별 정보"""
        identity = {
            "n": self.n,
            "sphere_level": self.sphere_level,
            "sphere_nodes": self.sphere_count,
            "radial_m": self.radial_m,
            "r": self.r,
            "R": self.R,
            "seed": self.seed,
            "sphere_rule": {2: "uniform-circle", 3: "gauss-legendre-x-uniform"}.get(self.n, "monte-carlo-antithetic"),
        }
        if self.octave_cells is not None:
            identity["octave_cells"] = self.octave_cells
        return identity


def build_grid(n: int, r: float, R: float, sphere_level: Optional[int] = None,
               m: Optional[int] = None, seed: Optional[int] = None) -> QuadratureGrid:
    """
    환형 격자 생성

    Args:
        n: 차원
        r, R: 환형 반지름
        sphere_level: 구면 세분 단계 (기본: QUADRATURE_CONFIG)
        m: 반경 노드 수 (기본: QUADRATURE_CONFIG)
        seed: Monte Carlo 시드

    Returns:
        QuadratureGrid: 격자
    """
    sphere_level = QUADRATURE_CONFIG["sphere_level"] if sphere_level is None else int(sphere_level)
    m = QUADRATURE_CONFIG["radial_nodes"] if m is None else int(m)
    seed = QUADRATURE_CONFIG["seed"] if seed is None else int(seed)
    nodes, weights = sphere_nodes(n, sphere_level, seed)
    t, w_lin, w_log = radial_nodes(r, R, m)
    return QuadratureGrid(
        n=n, sphere_nodes=nodes, sphere_weights=weights,
        radial_nodes=t, radial_weights=w_lin, radial_log_weights=w_log,
        r=float(r), R=float(R), sphere_level=sphere_level, radial_m=m, seed=seed,
    )


def octave_grid(n: int, k_max: Optional[int] = None, m: Optional[int] = None,
                sphere_level: Optional[int] = None, seed: Optional[int] = None) -> QuadratureGrid:
    """
    (2^{−k_max}, 1) 격자 - 모든 ε_k = 2^{−k} 가 칸 경계에 놓임

    노드 i 는 옥타브 (2^{−(j+1)}, 2^{−j}) 에 속하며 j = k_max − 1 − i // octave_cells.

    Args:
        n: 차원
        k_max: 가장 작은 ε 지수
        m: 전체 반경 노드 수 (옥타브당 m // k_max 칸)
        sphere_level: 구면 세분 단계
        seed: Monte Carlo 시드

    Returns:
        QuadratureGrid: octave_cells 가 설정된 격자
    """
    k_max = QUADRATURE_CONFIG["k_max"] if k_max is None else int(k_max)
    m = QUADRATURE_CONFIG["radial_nodes"] if m is None else int(m)
    if k_max < 1:
        raise ParameterError(f"k_max must be ≥ 1, got {k_max}")
    cells = max(8, m // k_max)
    grid = build_grid(n, 2.0 ** (-k_max), 1.0, sphere_level, cells * k_max, seed)
    grid.octave_cells = cells
    return grid


def octave_cumulative(values: np.ndarray, grid: QuadratureGrid) -> np.ndarray:
    """
    반경 축(첫 축) 값들을 옥타브별로 합한 뒤 바깥쪽부터 누적

    Args:
        values: (radial, ...) 배열, 이미 가중치가 곱해진 값
        grid: octave_grid 로 만든 격자

    Returns:
        np.ndarray: (k_max, ...) 배열, [k−1] 은 (2^{−k}, 1) 위의 합
    """
    if grid.octave_cells is None:
        raise ParameterError("grid was not built with octave_grid")
    values = np.asarray(values, dtype=float)
    k_max = grid.radial_count // grid.octave_cells
    per_octave = values.reshape((k_max, grid.octave_cells) + values.shape[1:]).sum(axis=1)
    # 행 0 이 가장 안쪽 옥타브이므로 뒤집어서 누적
    return np.cumsum(per_octave[::-1], axis=0)


def integrate_sphere(values: np.ndarray, grid: QuadratureGrid) -> np.ndarray:
    """마지막 축에 대한 구면 적분 Σ v·w_u"""
    return np.sum(np.asarray(values, dtype=float) * grid.sphere_weights, axis=-1)


def integrate_radial(values: np.ndarray, grid: QuadratureGrid, measure: str = "dt") -> np.ndarray:
    """
    첫 축에 대한 반경 적분

    Args:
        values: (radial, ...) 배열
        grid: 격자
        measure: "dt" 또는 "dt/t"

    Returns:
        np.ndarray: 적분값
    """
    values = np.asarray(values, dtype=float)
    if measure == "dt/t":
        weights = grid.radial_log_weights
    elif measure == "dt":
        # log 변수 중점 규칙: ∫g dt = ∫g·t d(log t)
        weights = grid.radial_nodes * grid.radial_log_weights
    else:
        raise ParameterError(f"unknown radial measure '{measure}' (use 'dt' or 'dt/t')")
    shape = (-1,) + (1,) * (values.ndim - 1)
    return np.sum(values * weights.reshape(shape), axis=0)


def integrate_annulus(g: Callable[[np.ndarray], np.ndarray], grid: QuadratureGrid,
                      tolerance: Optional[float] = None) -> float:
    """
    ∫_{A(r,R)} g dm = Σ g(tu)·t^n·Δ·w_u

    반경 방향은 로그 중점 규칙입니다: t^{n−1} dt = t^n·d(log t) 이므로 각 노드 가중치는
    t^n·Δ (Δ = radial_log_weights) 이며 grid.radial_weights (칸 길이) 는 쓰지 않습니다.

    g 가 NaN 을 돌려준 노드는 비정칙으로 보고 제외합니다.

    Args:
        g: (..., n) 점 배열 → (...) 값 배열
        grid: 환형 격자
        tolerance: 허용 비정칙 비율 (기본 0.1%)

    Returns:
        float: 적분값
    """
    tolerance = QUADRATURE_CONFIG["irregular_tolerance"] if tolerance is None else tolerance
    values = np.asarray(g(grid.points()), dtype=float)
    values = np.broadcast_to(values, (grid.radial_count, grid.sphere_count))
    irregular = ~np.isfinite(values)
    fraction = float(np.mean(irregular))
    if fraction > tolerance:
        raise IntegrationError(
            f"{fraction:.3%} of annulus nodes are irregular (tolerance {tolerance:.3%})", fraction
        )
    if fraction > 0.0:
        logger.warning(f"비정칙 노드 {fraction:.4%} 제외")
    values = np.where(irregular, 0.0, values)
    radial_weight = grid.radial_nodes ** grid.n * grid.radial_log_weights
    return float(np.sum(integrate_sphere(values, grid) * radial_weight))
