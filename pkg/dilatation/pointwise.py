"""
점별 팽창 계수

야코비 행렬 J 와 기준 방향 u = x/|x| 로부터
K (외팽창), L (내팽창), D (각 팽창), Q (법선 팽창), T (쌍대 팽창)를 계산합니다.
모든 계수는 J ↦ cJ 에 대해 불변이므로 정규화된 행렬 M 을 그대로 써도 됩니다.

    K⁻¹ ≤ L^{1/(1−n)} ≤ D^{1/(1−n)} ≤ Q ≤ T ≤ K^{1/(n−1)} ≤ L
"""

from dataclasses import dataclass, asdict
from typing import Any, Dict, Iterable, Optional, Union
import logging

import numpy as np
from scipy.optimize import minimize

from core.config import DILATATION_CONFIG
from core.errors import IrregularPointError, ParameterError
from mapping.mapping_spec import RadialProfile
from quadrature.grids import sphere_nodes

logger = logging.getLogger(__name__)


@dataclass
class DilatationSample:
    """한 점에서의 팽창 계수"""
    K: float
    L: float
    D: float
    Q: float
    detJ: float
    regular: bool
    T: Optional[float] = None
    log_det: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class DirectionalExtremes:
    """ℓ_f (최소 방향 신장)과 𝓛_f (최대 쌍대 신장)"""
    ell: float
    calL: float
    resolution: float = 0.0


@dataclass
class DualEstimate:
    """쌍대 팽창 추정 - 참값의 하한 추정치"""
    T: float
    calL: float
    converged: bool
    resolution: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


# ---------------------------------------------------------------------------
# 공통 커널
# ---------------------------------------------------------------------------

def _as_matrix(J) -> np.ndarray:
    matrix = np.asarray(J, dtype=float)
    if matrix.ndim < 2 or matrix.shape[-1] != matrix.shape[-2]:
        raise ParameterError(f"Jacobian must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise IrregularPointError("Jacobian has non-finite entries")
    return matrix


def _as_direction(u, n: int) -> np.ndarray:
    direction = np.asarray(u, dtype=float)
    if direction.shape[-1:] != (n,):
        raise ParameterError(f"direction must have {n} components")
    norm = np.linalg.norm(direction, axis=-1, keepdims=True)
    if np.any(np.abs(norm - 1.0) > 1e-8):
        raise ParameterError("reference direction must be a unit vector")
    return direction / norm


def regularity_mask(M: np.ndarray, sv: Optional[np.ndarray] = None) -> np.ndarray:
    """
    정칙점 판정: 유한, det > det_floor, 조건수 < condition_ceiling

    Args:
        M: (..., n, n) 행렬 배열
        sv: 미리 계산한 특이값 (오름차순), 없으면 계산

    Returns:
        np.ndarray: bool 배열
    """
    finite = np.all(np.isfinite(M), axis=(-2, -1))
    safe = np.where(finite[..., None, None], M, np.eye(M.shape[-1]))
    if sv is None:
        sv = np.sort(np.linalg.svd(safe, compute_uv=False), axis=-1)
    sign, _ = np.linalg.slogdet(safe)
    det = np.linalg.det(safe)
    with np.errstate(divide="ignore", invalid="ignore"):
        condition = sv[..., -1] / sv[..., 0]
    return (finite & (sign > 0) & (det > DILATATION_CONFIG["det_floor"])
            & (condition < DILATATION_CONFIG["condition_ceiling"]))


def log_dilatations(M: np.ndarray, u: np.ndarray) -> Dict[str, np.ndarray]:
    """
    벡터화된 log K, log L, log D, log Q 와 log|det M|

    Args:
        M: (..., n, n) 정칙 행렬
        u: (..., n) 단위 방향

    Returns:
        Dict: "K", "L", "D", "Q", "log_det", "sv" (오름차순 특이값)
    """
    n = M.shape[-1]
    sv = np.sort(np.linalg.svd(M, compute_uv=False), axis=-1)
    log_sv = np.log(sv)
    _, log_det = np.linalg.slogdet(M)
    dual = np.linalg.solve(np.swapaxes(M, -1, -2), u[..., None])[..., 0]
    stretch = np.einsum("...ij,...j->...i", M, u)
    return {
        "K": n * log_sv[..., -1] - log_det,
        "L": log_det - n * log_sv[..., 0],
        "D": log_det + n * np.log(np.linalg.norm(dual, axis=-1)),
        "Q": (n * np.log(np.linalg.norm(stretch, axis=-1)) - log_det) / (n - 1),
        "log_det": log_det,
        "sv": sv,
    }


def _require_regular(matrix: np.ndarray):
    if not bool(np.all(regularity_mask(matrix))):
        raise IrregularPointError("Jacobian is singular, orientation-reversing or ill-conditioned")


# ---------------------------------------------------------------------------
# 공개 연산
# ---------------------------------------------------------------------------

def singular_values(J) -> np.ndarray:
    """특이값 (오름차순)"""
    return np.sort(np.linalg.svd(_as_matrix(J), compute_uv=False), axis=-1)


def classical_dilatations(J) -> tuple:
    """
    외팽창 K = σ_maxⁿ/det J, 내팽창 L = det J/σ_minⁿ

    Returns:
        tuple: (K, L)
    """
    matrix = _as_matrix(J)
    _require_regular(matrix)
    n = matrix.shape[-1]
    logs = log_dilatations(matrix, np.eye(n)[0])
    return float(np.exp(logs["K"])), float(np.exp(logs["L"]))


def angular_dilatation(J, u) -> float:
    """D = det J·|J⁻ᵀu|ⁿ (ℓ_f = 1/|J⁻ᵀu|)"""
    matrix = _as_matrix(J)
    _require_regular(matrix)
    direction = _as_direction(u, matrix.shape[-1])
    return float(np.exp(log_dilatations(matrix, direction)["D"]))


def normal_dilatation(J, u) -> float:
    """Q = (|Ju|ⁿ/det J)^{1/(n−1)}"""
    matrix = _as_matrix(J)
    _require_regular(matrix)
    direction = _as_direction(u, matrix.shape[-1])
    return float(np.exp(log_dilatations(matrix, direction)["Q"]))


def _seed_resolution(n: int, level: int, count: int) -> float:
    if n == 2:
        return np.pi / count
    if n == 3:
        return np.pi / (4 * 2 ** level)
    # Monte Carlo 노드의 평균 간격
    return float(count ** (-1.0 / (n - 1)))


def dual_dilatation(J, u, restarts: Optional[int] = None, seed_level: Optional[int] = None) -> DualEstimate:
    """
    T = (𝓛ⁿ/det J)^{1/(n−1)}, 𝓛² = max_{|h|=1} |Jh|²(u·h)²

    거친 구면 격자 상위 restarts 개 점과 u 에서 Nelder-Mead 로 국소 상승합니다.

    Args:
        J: 야코비 행렬
        u: 기준 방향
        restarts: 시작점 수 (기본 DILATATION_CONFIG)
        seed_level: 시작 격자 세분 단계

    Returns:
        DualEstimate: T 하한 추정치와 수렴 여부
    """
    matrix = _as_matrix(J)
    _require_regular(matrix)
    n = matrix.shape[-1]
    direction = _as_direction(u, n)
    restarts = DILATATION_CONFIG["dual_restarts"] if restarts is None else int(restarts)
    seed_level = DILATATION_CONFIG["dual_seed_level"] if seed_level is None else int(seed_level)
    if restarts < 1:
        raise ParameterError(f"restarts must be ≥ 1, got {restarts}")

    # F ≤ 1 이 되도록 σ_max 로 정규화
    peak = float(np.linalg.norm(matrix, 2))
    gram = (matrix.T @ matrix) / peak ** 2

    def objective(v: np.ndarray) -> float:
        norm2 = float(v @ v)
        if norm2 == 0.0:
            return 0.0
        return -float(v @ gram @ v) * float(direction @ v) ** 2 / norm2 ** 2

    seeds, _ = sphere_nodes(n, seed_level, seed=0, monte_carlo_nodes=256)
    seed_values = np.einsum("ki,ij,kj->k", seeds, gram, seeds) * (seeds @ direction) ** 2
    order = np.argsort(seed_values)[::-1][:restarts]
    starts = [direction] + [seeds[k] for k in order]

    best = -objective(direction)
    converged = False
    for start in starts:
        result = minimize(objective, start, method="Nelder-Mead",
                          options={"xatol": 1e-10, "fatol": 1e-14, "maxiter": 2000 * n})
        converged = converged or bool(result.success)
        best = max(best, -float(result.fun))
    if not converged:
        logger.warning("쌍대 팽창 탐색이 수렴하지 않음 - T는 하한 추정치")

    calL = peak * float(np.sqrt(best))
    _, log_det = np.linalg.slogdet(matrix)
    T = float(np.exp((n * np.log(calL) - log_det) / (n - 1)))
    return DualEstimate(T=T, calL=calL, converged=converged,
                        resolution=_seed_resolution(n, seed_level, len(seeds)))


def radial_oracle(profile: RadialProfile, t: float, n: int) -> DilatationSample:
    """
    반경 신장 Φ(|x|)x/|x| 의 닫힌 형태 팽창 계수

    Args:
        profile: 반경 프로파일
        t: 반지름 (0 < t < 1)
        n: 차원

    Returns:
        DilatationSample: T 와 야코비 행렬식 포함
    """
    if not (0.0 < t < 1.0):
        raise ParameterError(f"radius must lie in (0, 1), got {t!r}")
    if int(n) != n or n < 2:
        raise ParameterError(f"dimension must be an integer ≥ 2, got {n}")
    if float(profile.dphi(np.asarray(t, dtype=float))) <= 0.0:
        raise IrregularPointError(f"Φ'({t!r}) ≤ 0: radial stretching is not regular there")

    stretch = float(profile.normal_stretch(t))
    if stretch >= 1.0 / np.sqrt(2.0):
        T = stretch
    else:
        T = (2.0 * np.sqrt(1.0 - stretch ** 2)) ** (n / (1.0 - n)) * stretch ** (1.0 / (1.0 - n))

    log_phi = float(profile.log_phi_ratio(t))
    # J = Φ'(t)·φ(t)^{n−1} = 𝒬·φ(t)ⁿ
    log_det = np.log(stretch) + n * log_phi
    return DilatationSample(
        K=max(stretch ** (n - 1), 1.0 / stretch),
        L=max(stretch ** (1 - n), stretch),
        D=stretch ** (1 - n),
        Q=stretch,
        T=float(T),
        detJ=float(np.exp(log_det)),
        regular=True,
        log_det=float(log_det),
    )


def brute_force_directional(J, u, grid_level: int = 5, polish: bool = True) -> DirectionalExtremes:
    """
    구면 격자 전수 탐색으로 ℓ_f 와 𝓛_f 계산 (닫힌 형태 검증용)

    Args:
        J: 야코비 행렬
        u: 기준 방향
        grid_level: 구면 격자 세분 단계
        polish: 격자 최적점에서 Nelder-Mead 로 다듬기

    Returns:
        DirectionalExtremes: (ell, calL, 격자 해상도)
    """
    matrix = _as_matrix(J)
    n = matrix.shape[-1]
    direction = _as_direction(u, n)
    if np.linalg.det(matrix) <= 0.0:
        raise IrregularPointError("Jacobian determinant must be positive")

    nodes, _ = sphere_nodes(n, grid_level, seed=0, monte_carlo_nodes=64 * 4 ** grid_level)
    stretches = np.linalg.norm(nodes @ matrix.T, axis=-1)
    projections = np.abs(nodes @ direction)
    usable = projections > 0.0
    ratios = stretches[usable] / projections[usable]
    products = stretches * projections
    ell = float(np.min(ratios))
    calL = float(np.max(products))

    if polish:
        def ratio(v):
            p = abs(float(v @ direction))
            return np.linalg.norm(matrix @ v) / p if p > 0.0 else np.inf

        def negative_product(v):
            norm2 = float(v @ v)
            return -np.linalg.norm(matrix @ v) * abs(float(v @ direction)) / norm2 if norm2 > 0.0 else 0.0

        options = {"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000 * n}
        low = minimize(ratio, nodes[usable][np.argmin(ratios)], method="Nelder-Mead", options=options)
        high = minimize(negative_product, nodes[np.argmax(products)], method="Nelder-Mead", options=options)
        ell = min(ell, float(low.fun))
        calL = max(calL, -float(high.fun))

    return DirectionalExtremes(ell=ell, calL=calL,
                               resolution=_seed_resolution(n, grid_level, len(nodes)))


def chain_values(sample: Any, n: int) -> list:
    """체인 K⁻¹ ≤ L^{1/(1−n)} ≤ D^{1/(1−n)} ≤ Q ≤ [T] ≤ K^{1/(n−1)} ≤ L 의 항들"""
    K, L, D, Q = (np.asarray(getattr(sample, name), dtype=float) for name in ("K", "L", "D", "Q"))
    terms = [1.0 / K, L ** (1.0 / (1 - n)), D ** (1.0 / (1 - n)), Q]
    T = getattr(sample, "T", None)
    if T is not None:
        terms.append(np.asarray(T, dtype=float))
    terms.extend([K ** (1.0 / (n - 1)), L])
    return terms


def check_chain(samples: Union[DilatationSample, Iterable[DilatationSample], Any], n: int,
                slack: Optional[float] = None) -> float:
    """
    팽창 계수 체인의 최대 위반량 (상대값, 정칙점만)

    Args:
        samples: DilatationSample, 그 목록, 또는 DilatationField
        n: 차원
        slack: 경고 기준 (기본 DILATATION_CONFIG chain_slack)

    Returns:
        float: max (a_i − a_{i+1})/max(1, |a_{i+1}|), 위반이 없으면 ≤ 0
    """
    slack = DILATATION_CONFIG["chain_slack"] if slack is None else slack
    if isinstance(samples, DilatationSample) or hasattr(samples, "regular"):
        batch = [samples]
    else:
        batch = list(samples)

    worst = -np.inf
    for sample in batch:
        regular = np.asarray(sample.regular, dtype=bool)
        if not np.any(regular):
            continue
        terms = [np.broadcast_to(term, regular.shape)[regular] for term in chain_values(sample, n)]
        for left, right in zip(terms[:-1], terms[1:]):
            violation = (left - right) / np.maximum(1.0, np.abs(right))
            worst = max(worst, float(np.max(violation)))
    if worst > slack:
        logger.warning(f"팽창 계수 체인 위반: {worst:.3e} > {slack:.1e}")
    return worst
