"""
구면 링 A(r, R) 상의 곡선족 모듈러스 M(f(Γ)) 상하한

- 방향 하한:   ∫_S (∫_r^R Q_f(tu) dt/t)^{1−n} dσ(u)
- 극값 상한:   (∫_r^R (∫_S D_f(tu) t^{n−1} dσ)^{1/(1−n)} dt)^{1−n}
- 밀도쌍 상하한, 고전적 (K, L) 상하한, 링 모듈러스 구간, 공동 반지름 구간
"""

from dataclasses import dataclass, asdict
from typing import Any, Callable, Dict, List, Optional, Tuple
import logging

import numpy as np

from core.config import QUADRATURE_CONFIG
from core.errors import AdmissibilityError, DomainError, ParameterError
from mapping.catalog import exact_ring_modulus
from mapping.mapping_spec import MappingSpec, evaluate
from modulus.rings import family_interval_to_ring, modulus_conversions, teichmuller_constant_bound
from modulus.sampling import GridMoments, annulus_grid, grid_moments
from quadrature.grids import QuadratureGrid, build_grid, sphere_area

logger = logging.getLogger(__name__)

ADMISSIBILITY_TOLERANCE = 1e-6


@dataclass
class ModulusBounds:
    """M(f(Γ_{A(r,R)})) 의 상하한"""
    r: float
    R: float
    lower: float
    upper: float
    exact: Optional[float] = None
    curve_family_note: str = "M(f(Γ)) for the family joining the boundary spheres of A(r, R)"
    kind: str = "directional"
    rho_residual: Optional[float] = None
    p_residual: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class DensityPair:
    """반경 밀도 ρ(t) 와 구면 밀도 p(u)"""
    rho: Callable[[np.ndarray], np.ndarray]
    p: Callable[[np.ndarray], np.ndarray]
    label: str = "custom"


@dataclass
class RadiusBracket:
    """공동 반지름 R₀(r) 구간"""
    r: float
    lower_R0: float
    upper_R0: Optional[float]
    mo_interval: Tuple[float, float]
    R1: float
    R1_spread: float
    teichmuller_constant: float
    note: str = ""

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["mo_interval"] = list(self.mo_interval)
        payload["upper_R0"] = self.upper_R0 if self.upper_R0 is not None else "not applicable"
        return payload


# ---------------------------------------------------------------------------
# 부분합 → 상하한
# ---------------------------------------------------------------------------

def _moments(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid],
             moments: Optional[GridMoments], workers: int) -> GridMoments:
    if moments is not None:
        return moments
    return grid_moments(mapping, annulus_grid(mapping, r, R, grid), workers)


def outer_sphere_power(inner: np.ndarray, weights: np.ndarray, n: int, label: str) -> float:
    """Σ_u w_u·inner(u)^{1−n}, inner ≤ 0 인 방향은 경고 후 제외"""
    usable = np.isfinite(inner) & (inner > 0.0)
    skipped = int(np.count_nonzero(~usable))
    if skipped:
        logger.warning(f"{label}: 내부 적분이 양수가 아닌 방향 {skipped}개 제외")
    return float(np.sum(weights[usable] * inner[usable] ** (1.0 - n)))


def outer_radial_power(radial_sums: np.ndarray, grid: QuadratureGrid) -> np.ndarray:
    """반경 노드별 (Σ_u X w_u·t^{n−1})^{1/(1−n)}·t·Δ 기여"""
    n = grid.n
    t = grid.radial_nodes
    density = radial_sums * t ** (n - 1)
    usable = density > 0.0
    contributions = np.zeros_like(t)
    contributions[usable] = density[usable] ** (1.0 / (1.0 - n)) * t[usable] * grid.radial_log_weights[usable]
    return contributions


def lower_bound_sigma(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid] = None,
                      moments: Optional[GridMoments] = None, workers: int = 0) -> float:
    """
    방향 하한 ∫_S (∫_r^R Q_f(tu) dt/t)^{1−n} dσ(u)

    Args:
        mapping: 대상 사상
        r, R: 환형 반지름
        grid: 적분 격자 (반지름이 다르면 같은 단계로 재생성)
        moments: 미리 계산한 부분합
        workers: 워커 수

    Returns:
        float: M(f(Γ)) 의 하한
    """
    moments = _moments(mapping, r, R, grid, moments, workers)
    return outer_sphere_power(moments.direction_total("Q"), moments.grid.sphere_weights,
                              moments.grid.n, "lower_bound_sigma")


def upper_bound_extremal(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid] = None,
                         moments: Optional[GridMoments] = None, workers: int = 0) -> float:
    """
    극값 상한 (∫_r^R (∫_S D_f(tu) t^{n−1} dσ)^{1/(1−n)} dt)^{1−n}

    Returns:
        float: M(f(Γ)) 의 상한
    """
    moments = _moments(mapping, r, R, grid, moments, workers)
    total = float(np.sum(outer_radial_power(moments.radial_sums["D"], moments.grid)))
    return total ** (1.0 - moments.grid.n) if total > 0.0 else float("inf")


def exact_family_modulus(mapping: MappingSpec, r: float, R: float) -> Optional[float]:
    """상 링이 둥근 환형일 때의 M(f(Γ))"""
    mo = exact_ring_modulus(mapping, r, R)
    if mo is None or not mo > 0.0:
        return None
    return modulus_conversions(mo, "ring_to_family", mapping.dimension)


def modulus_bounds(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid] = None,
                   workers: int = 0, moments: Optional[GridMoments] = None) -> ModulusBounds:
    """방향 하한과 극값 상한을 한 번의 격자 평가로 계산"""
    moments = _moments(mapping, r, R, grid, moments, workers)
    bounds = ModulusBounds(
        r=r, R=R,
        lower=lower_bound_sigma(mapping, r, R, moments=moments),
        upper=upper_bound_extremal(mapping, r, R, moments=moments),
        exact=exact_family_modulus(mapping, r, R),
    )
    if bounds.lower > bounds.upper * (1.0 + 1e-6):
        logger.warning(f"'{mapping.label}': 하한 {bounds.lower:.6g} > 상한 {bounds.upper:.6g} - 격자를 세분하세요")
    return bounds


def classical_double_bound(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid] = None,
                           moments: Optional[GridMoments] = None, workers: int = 0) -> ModulusBounds:
    """
    고전적 팽창 계수 상하한

    하한 ∫_S (∫ K_f^{1/(n−1)} dt/t)^{1−n} dσ, 상한 (∫ (∫_S L_f t^{n−1} dσ)^{1/(1−n)} dt)^{1−n}
    """
    moments = _moments(mapping, r, R, grid, moments, workers)
    n = moments.grid.n
    lower = outer_sphere_power(moments.direction_total("K_root"), moments.grid.sphere_weights, n,
                               "classical_double_bound")
    total = float(np.sum(outer_radial_power(moments.radial_sums["L"], moments.grid)))
    return ModulusBounds(
        r=r, R=R, lower=lower,
        upper=total ** (1.0 - n) if total > 0.0 else float("inf"),
        exact=exact_family_modulus(mapping, r, R),
        kind="classical",
    )


# ---------------------------------------------------------------------------
# 밀도쌍
# ---------------------------------------------------------------------------

def _density_integrals(densities: DensityPair, grid: QuadratureGrid) -> Tuple[float, float]:
    t = grid.radial_nodes
    rho = np.asarray(densities.rho(t), dtype=float) * np.ones_like(t)
    p = np.asarray(densities.p(grid.sphere_nodes), dtype=float) * np.ones(grid.sphere_count)
    if np.any(rho < 0.0) or np.any(p < 0.0):
        raise ParameterError("densities must be nonnegative")
    rho_integral = float(np.sum(rho * t * grid.radial_log_weights))
    p_integral = float(np.sum(p ** (grid.n - 1) * grid.sphere_weights))
    return rho_integral, p_integral


def canonical_densities(r: float, R: float, n: int) -> DensityPair:
    """ρ(t) = 1/(t·log(R/r)), p ≡ ω_{n−1}^{1/(1−n)}"""
    if not (0.0 < r < R):
        raise DomainError(f"annulus radii must satisfy 0 < r < R, got r={r!r}, R={R!r}")
    log_ratio = np.log(R / r)
    p_value = sphere_area(n) ** (1.0 / (1.0 - n))
    return DensityPair(
        rho=lambda t: 1.0 / (np.asarray(t, dtype=float) * log_ratio),
        p=lambda u: np.full(np.shape(u)[:-1], p_value),
        label="canonical",
    )


def admissible_normalize(raw: DensityPair, r: float, R: float, n: int,
                         grid: Optional[QuadratureGrid] = None) -> DensityPair:
    """
    ∫_r^R ρ dt = 1, ∫_S p^{n−1} dσ = 1 이 되도록 정규화

    Args:
        raw: 음이 아닌 밀도쌍
        r, R: 환형 반지름
        n: 차원
        grid: 적분 격자

    Returns:
        DensityPair: 정규화된 밀도쌍
    """
    grid = grid if grid is not None and grid.r == r and grid.R == R and grid.n == n else build_grid(n, r, R)
    rho_integral, p_integral = _density_integrals(raw, grid)
    if not (rho_integral > 0.0 and p_integral > 0.0):
        raise ParameterError("density integrates to zero and cannot be normalized")
    rho_scale = 1.0 / rho_integral
    p_scale = p_integral ** (1.0 / (1.0 - n))
    return DensityPair(
        rho=lambda t: rho_scale * np.asarray(raw.rho(t), dtype=float),
        p=lambda u: p_scale * np.asarray(raw.p(u), dtype=float),
        label=f"normalized({raw.label})",
    )


def double_bound_with_densities(mapping: MappingSpec, r: float, R: float, densities: DensityPair,
                                grid: Optional[QuadratureGrid] = None, workers: int = 0,
                                moments: Optional[GridMoments] = None) -> ModulusBounds:
    """
    밀도쌍 (ρ, p) 로 매개된 상하한

    하한 (∫_A p(x/|x|)ⁿ Q_f dm/|x|ⁿ)^{1−n}, 상한 ∫_A ρ(|x|)ⁿ D_f dm

    Raises:
        AdmissibilityError: 정규화 잔차가 1e−6 을 넘는 경우
    """
    grid = moments.grid if moments is not None else annulus_grid(mapping, r, R, grid)
    n = grid.n
    rho_integral, p_integral = _density_integrals(densities, grid)
    rho_residual = abs(rho_integral - 1.0)
    p_residual = abs(p_integral - 1.0)
    if rho_residual > ADMISSIBILITY_TOLERANCE or p_residual > ADMISSIBILITY_TOLERANCE:
        raise AdmissibilityError(
            f"densities are not admissible (ρ residual {rho_residual:.3e}, p residual {p_residual:.3e})",
            rho_residual, p_residual,
        )

    moments = moments if moments is not None else grid_moments(mapping, grid, workers)
    t = grid.radial_nodes
    p = np.asarray(densities.p(grid.sphere_nodes), dtype=float) * np.ones(grid.sphere_count)
    rho = np.asarray(densities.rho(t), dtype=float) * np.ones_like(t)

    lower_integral = float(np.sum(p ** n * grid.sphere_weights * moments.direction_total("Q")))
    upper = float(np.sum(rho ** n * t ** n * grid.radial_log_weights * moments.radial_sums["D"]))
    return ModulusBounds(
        r=r, R=R,
        lower=lower_integral ** (1.0 - n) if lower_integral > 0.0 else float("inf"),
        upper=upper,
        exact=exact_family_modulus(mapping, r, R),
        kind=f"densities[{densities.label}]",
        rho_residual=rho_residual,
        p_residual=p_residual,
    )


# ---------------------------------------------------------------------------
# 링 모듈러스 구간과 공동 반지름
# ---------------------------------------------------------------------------

def modulus_bracket(mapping: MappingSpec, r: float, R: float, grid: Optional[QuadratureGrid] = None,
                    workers: int = 0) -> Tuple[float, float]:
    """mo f(A(r, R)) 의 구간 (mo_low, mo_high)"""
    bounds = modulus_bounds(mapping, r, R, grid, workers)
    return family_interval_to_ring(bounds.lower, bounds.upper, mapping.dimension)


def sphere_extrema(mapping: MappingSpec, t: float, grid: Optional[QuadratureGrid] = None) -> Tuple[float, float]:
    """
    반지름 t 구면 표본에서 |f| 의 최댓값과 최솟값

    Returns:
        Tuple: (M_f(t), m_f(t))
    """
    if not (0.0 < t < 1.0):
        raise DomainError(f"sphere radius must lie in (0, 1), got {t!r}")
    nodes = grid.sphere_nodes if grid is not None else build_grid(mapping.dimension, 0.5, 1.0).sphere_nodes
    moduli = np.linalg.norm(evaluate(mapping, t * nodes), axis=-1)
    return float(np.max(moduli)), float(np.min(moduli))


def boundary_radius(R: float) -> float:
    """R = 1 이면 구면 표본 반지름을 1 − inset 으로"""
    return R if R < 1.0 else 1.0 - QUADRATURE_CONFIG["boundary_inset"]


def radius_bracket(mapping: MappingSpec, r: float, grid: Optional[QuadratureGrid] = None,
                   workers: int = 0, bounds: Optional[ModulusBounds] = None) -> RadiusBracket:
    """
    R₁e^{−M(r)} ≤ R₀(r) ≤ R₁e^{A_n − M(r)}, M(r) = mo f(A(r, 1))

    M(r) 은 상하한 쌍에서 얻은 구간으로 보수적으로 적용합니다.
    상한은 M 구간이 A_n 을 넘을 때만 적용됩니다.

    Args:
        mapping: 대상 사상 (상 링이 0 과 ∞ 를 분리한다고 가정)
        r: 안쪽 반지름
        grid: 적분 격자
        bounds: 미리 계산한 A(r, 1) 상하한

    Returns:
        RadiusBracket: 공동 반지름 구간
    """
    if bounds is None:
        mo_low, mo_high = modulus_bracket(mapping, r, 1.0, grid, workers)
    else:
        mo_low, mo_high = family_interval_to_ring(bounds.lower, bounds.upper, mapping.dimension)
    outer_max, outer_min = sphere_extrema(mapping, boundary_radius(1.0), grid)
    constant, exact = teichmuller_constant_bound(mapping.dimension)

    lower_R0 = outer_min * float(np.exp(-mo_high))
    upper_R0 = None
    note = "upper bound needs mo f(A(r,1)) > A_n"
    if mo_low > constant:
        upper_R0 = outer_min * float(np.exp(constant - mo_low))
        note = "A_n exact" if exact else "A_n is an upper bound"
    else:
        logger.info(f"M(r) 구간 하단 {mo_low:.6g} ≤ A_n {constant:.6g}: R₀ 상한은 적용 불가")
    return RadiusBracket(
        r=r, lower_R0=lower_R0, upper_R0=upper_R0, mo_interval=(mo_low, mo_high),
        R1=outer_min, R1_spread=outer_max - outer_min, teichmuller_constant=constant, note=note,
    )


def bounds_sweep(mapping: MappingSpec, r: float, R: float, count: int,
                 grid: Optional[QuadratureGrid] = None, workers: int = 0) -> List[ModulusBounds]:
    """로그 간격 반지름 r_i ∈ [r, R) 에 대한 상하한 목록"""
    if count < 1:
        raise ParameterError(f"sweep count must be ≥ 1, got {count}")
    radii = np.geomspace(r, R, count + 1)[:-1]
    return [modulus_bounds(mapping, float(radius), R, grid, workers) for radius in radii]
