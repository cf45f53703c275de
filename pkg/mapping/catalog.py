"""
사상 카탈로그 - 항등, 스케일링, f₁, f₂, f₃(quick rotation), 반경 신장

모든 카탈로그 사상은 해석적 야코비 규칙을 가집니다.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple
import logging

import numpy as np

from core.errors import ParameterError
from mapping.mapping_spec import MappingSpec, RadialProfile

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# 반경 프로파일
# ---------------------------------------------------------------------------

def f1_profile(alpha: float) -> RadialProfile:
    """Φ(t) = (1 + t^α)/2"""
    return RadialProfile(
        phi=lambda t: 0.5 * (1.0 + t ** alpha),
        dphi=lambda t: 0.5 * alpha * t ** (alpha - 1.0),
        log_phi_ratio_rule=lambda t: np.log1p(t ** alpha) - np.log(2.0 * t),
        stretch_rule=lambda t: alpha / (1.0 + t ** (-alpha)),
        name=f"f1(alpha={alpha!r})",
    )


def f2_profile() -> RadialProfile:
    """Φ(t) = t·e^{1−1/t}"""
    return RadialProfile(
        phi=lambda t: t * np.exp(1.0 - 1.0 / t),
        dphi=lambda t: np.exp(1.0 - 1.0 / t) * (1.0 + 1.0 / t),
        log_phi_ratio_rule=lambda t: 1.0 - 1.0 / t,
        stretch_rule=lambda t: 1.0 + 1.0 / t,
        name="f2",
    )


def power_profile(power: float) -> RadialProfile:
    """Φ(t) = t^p, 𝒬 ≡ p"""
    return RadialProfile(
        phi=lambda t: t ** power,
        dphi=lambda t: power * t ** (power - 1.0),
        log_phi_ratio_rule=lambda t: (power - 1.0) * np.log(t),
        stretch_rule=lambda t: np.full_like(np.asarray(t, dtype=float), power),
        name=f"power(p={power!r})",
    )


def linear_profile(scale: float) -> RadialProfile:
    """Φ(t) = c·t (등각 스케일링)"""
    return RadialProfile(
        phi=lambda t: scale * t,
        dphi=lambda t: np.full_like(np.asarray(t, dtype=float), scale),
        log_phi_ratio_rule=lambda t: np.full_like(np.asarray(t, dtype=float), np.log(scale)),
        stretch_rule=lambda t: np.ones_like(np.asarray(t, dtype=float)),
        name=f"linear(c={scale!r})",
    )


def check_profile_monotone(profile: RadialProfile, samples: int = 257) -> None:
    """
    Φ가 (0, 1)에서 순증가하는지 로그 격자에서 점검

    Raises:
        ParameterError: 증가하지 않는 구간이 발견된 경우
    """
    t = np.logspace(-6, 0, samples, endpoint=False)
    with np.errstate(all="ignore"):
        log_phi = np.log(t) + profile.log_phi_ratio(t)
        stretch = profile.normal_stretch(t)
    if not (np.all(np.isfinite(log_phi)) and np.all(np.diff(log_phi) > 0.0) and np.all(stretch > 0.0)):
        raise ParameterError(f"radial profile '{profile.name}' is not strictly increasing on (0, 1)")


# ---------------------------------------------------------------------------
# 사상 구성
# ---------------------------------------------------------------------------

def radial_map(profile: RadialProfile, n: int, label: Optional[str] = None,
               params: Optional[Dict[str, Any]] = None) -> MappingSpec:
    """
    반경 신장 f(x) = Φ(|x|)·x/|x|

    f'(x) = φ(t)·(I + (𝒬 − 1)·u uᵀ), u = x/|x|
    """
    identity = np.eye(n)

    def evaluate_rule(x: np.ndarray) -> np.ndarray:
        t = np.linalg.norm(x, axis=-1)
        return (profile.phi(t) / t)[..., None] * x

    def jacobian_rule(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        t = np.linalg.norm(x, axis=-1)
        u = x / t[..., None]
        stretch = profile.normal_stretch(t)
        matrix = identity + (stretch - 1.0)[..., None, None] * (u[..., :, None] * u[..., None, :])
        return profile.log_phi_ratio(t), matrix

    return MappingSpec(
        dimension=n,
        evaluate_rule=evaluate_rule,
        jacobian_rule=jacobian_rule,
        label=label or f"radial[{profile.name}]",
        params=params or {},
        profile=profile,
    )


def quick_rotation_map(n: int) -> MappingSpec:
    """
    f₃(x) = (z·e^{2i log|z|}, x₃, …, xₙ), z = x₁ + i x₂

    z 부분의 실 야코비: g_z = (1+i)w, g_z̄ = i·w·z/z̄, w = e^{2i log|z|}
    """

    def evaluate_rule(x: np.ndarray) -> np.ndarray:
        z = x[..., 0] + 1j * x[..., 1]
        modulus = np.abs(z)
        # 축 위 (z = 0) 에서는 z·e^{2i log|z|} → 0
        w = np.where(modulus > 0.0, z * np.exp(2j * np.log(np.where(modulus > 0.0, modulus, 1.0))), 0.0)
        out = np.array(x, dtype=float, copy=True)
        out[..., 0] = w.real
        out[..., 1] = w.imag
        return out

    def jacobian_rule(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        z = x[..., 0] + 1j * x[..., 1]
        rotation = np.exp(2j * np.log(np.abs(z)))
        a = (1.0 + 1.0j) * rotation
        b = 1.0j * rotation * z / np.conj(z)
        matrix = np.zeros(x.shape + (n,), dtype=float)
        matrix[..., 0, 0] = (a + b).real
        matrix[..., 1, 0] = (a + b).imag
        matrix[..., 0, 1] = -(a - b).imag
        matrix[..., 1, 1] = (a - b).real
        for k in range(2, n):
            matrix[..., k, k] = 1.0
        return np.zeros(x.shape[:-1]), matrix

    return MappingSpec(dimension=n, evaluate_rule=evaluate_rule, jacobian_rule=jacobian_rule, label="f3")


# ---------------------------------------------------------------------------
# 카탈로그
# ---------------------------------------------------------------------------

@dataclass
class CatalogEntry:
    """카탈로그 항목 설명"""
    name: str
    description: str
    factory: Callable[..., MappingSpec]
    parameters: Dict[str, str] = field(default_factory=dict)  # 이름 -> 범위 설명

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "description": self.description, "parameters": dict(self.parameters)}


def _require_range(name: str, value: float, low: float, high: float) -> float:
    value = float(value)
    if not (low < value < high):
        raise ParameterError(f"parameter {name}={value!r} outside ({low}, {high})")
    return value


def _identity(n: int) -> MappingSpec:
    return radial_map(linear_profile(1.0), n, label="identity")


def _scaling(n: int, c: float = 2.0) -> MappingSpec:
    c = _require_range("c", c, 0.0, np.inf)
    return radial_map(linear_profile(c), n, label="scaling", params={"c": c})


def _f1(n: int, alpha: float = 0.5) -> MappingSpec:
    alpha = _require_range("alpha", alpha, 0.0, 1.0)
    return radial_map(f1_profile(alpha), n, label="f1", params={"alpha": alpha})


def _f2(n: int) -> MappingSpec:
    return radial_map(f2_profile(), n, label="f2")


def _f3(n: int) -> MappingSpec:
    return quick_rotation_map(n)


def _radial(n: int, profile: Optional[RadialProfile] = None, power: Optional[float] = None) -> MappingSpec:
    if profile is None and power is None:
        raise ParameterError("radial map needs either a profile or power=p")
    if profile is None:
        power = _require_range("power", power, 0.0, np.inf)
        profile = power_profile(power)
        params = {"power": power}
    else:
        params = {}
    check_profile_monotone(profile)
    return radial_map(profile, n, label="radial", params=params)


class MappingCatalog:
    """이름으로 카탈로그 사상을 생성"""

    def __init__(self):
        self.entries: Dict[str, CatalogEntry] = {}
        self.register(CatalogEntry("identity", "x ↦ x", _identity))
        self.register(CatalogEntry("scaling", "x ↦ c·x", _scaling, {"c": "(0, inf), default 2"}))
        self.register(CatalogEntry("f1", "(1+|x|^α)/(2|x|)·x, cavity of radius 1/2",
                                   _f1, {"alpha": "(0, 1), default 0.5"}))
        self.register(CatalogEntry("f2", "x·e^{1−1/|x|}, extends continuously to 0", _f2))
        self.register(CatalogEntry("f3", "quick rotation (z·e^{2i log|z|}, x3..xn)", _f3))
        self.register(CatalogEntry("radial", "Φ(|x|)·x/|x| for a RadialProfile or Φ(t)=t^p",
                                   _radial, {"power": "(0, inf)", "profile": "RadialProfile"}))

    def register(self, entry: CatalogEntry):
        """항목 등록"""
        self.entries[entry.name] = entry

    def names(self) -> List[str]:
        return list(self.entries)

    def get(self, name: str, n: int, params: Optional[Dict[str, Any]] = None) -> MappingSpec:
        """
        카탈로그 사상 생성

        Args:
            name: 사상 이름
            n: 차원
            params: 매개변수 (예: {"alpha": 0.5})

        Returns:
            MappingSpec: 해석적 야코비를 가진 사상
        """
        entry = self.entries.get(name)
        if entry is None:
            raise ParameterError(f"unknown catalog map '{name}' (known: {', '.join(self.names())})")
        params = dict(params or {})
        unknown = set(params) - set(entry.parameters)
        if unknown:
            raise ParameterError(f"map '{name}' does not take parameter(s) {sorted(unknown)}")
        if int(n) != n or n < 2:
            raise ParameterError(f"dimension must be an integer ≥ 2, got {n}")
        mapping = entry.factory(int(n), **params)
        logger.debug(f"catalog map '{name}' (n={n}, params={params}) 생성")
        return mapping

    def describe(self) -> List[Dict[str, Any]]:
        return [entry.to_dict() for entry in self.entries.values()]


def exact_ring_modulus(mapping: MappingSpec, r: float, R: float) -> Optional[float]:
    """
    반경 사상의 상 링 모듈러스 log(Φ(R)/Φ(r)); 반경 사상이 아니면 None

    상 링이 둥근 환형일 때만 닫힌 형태가 존재합니다.
    """
    profile = mapping.profile
    if profile is None:
        return None
    log_ratio = np.log(R / r) + profile.log_phi_ratio(np.array(R)) - profile.log_phi_ratio(np.array(r))
    return float(log_ratio)


# 전역 카탈로그 인스턴스
mapping_catalog = MappingCatalog()


def catalog_get(name: str, n: int, params: Optional[Dict[str, Any]] = None) -> MappingSpec:
    """카탈로그 사상 생성 헬퍼 함수"""
    return mapping_catalog.get(name, n, params)
