"""
원점 공동화 판정

네 적분을 ε_k = 2^{−k} 절단으로 계산하고 ε → 0 극한을 분류합니다.

    I_Q = ∫_S (∫_0^1 Q_f dt/t)^{1−n} dσ             > 0  ⇒ 공동화
    I_K = ∫_S (∫_0^1 K_f^{1/(n−1)} dt/t)^{1−n} dσ    > 0  ⇒ 공동화
    I_D = ∫_0^1 (∫_S D_f t^{n−1} dσ)^{1/(1−n)} dt    = ∞  ⇒ 공동화 없음
    I_L = ∫_0^1 (∫_S L_f t^{n−1} dσ)^{1/(1−n)} dt    = ∞  ⇒ 공동화 없음

절단값은 모두 octave_grid 한 번의 평가에서 누적합으로 얻습니다.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional
import logging

import numpy as np

from core.config import CLASSIFIER_CONFIG, QUADRATURE_CONFIG
from core.errors import ParameterError
from mapping.mapping_spec import MappingSpec
from modulus.bounds import outer_radial_power
from modulus.rings import family_interval_to_ring
from modulus.sampling import GridMoments, grid_moments
from quadrature.grids import QuadratureGrid, octave_cumulative, octave_grid, sphere_area
from quadrature.limits import LimitDirection, LimitVerdict, VerdictKind, limit_classify

logger = logging.getLogger(__name__)


class CavitationVerdict(Enum):
    CAVITATION = "Cavitation"
    NO_CAVITATION = "NoCavitation"
    UNDETERMINED = "Undetermined"


class FiredRule(Enum):
    """판정 근거 정리"""
    IQ_POSITIVE = "Thm 3.2 (I_Q > 0)"
    IK_POSITIVE = "Thm 3.3 (I_K > 0)"
    ID_INFINITE = "Thm 3.4 (I_D = ∞)"
    IL_INFINITE = "Thm 3.5 (I_L = ∞)"


@dataclass
class IntegralResult:
    """적분 하나의 절단값과 극한 판정"""
    name: str
    verdict: LimitVerdict
    partials: List[tuple] = field(default_factory=list)

    @property
    def best_value(self) -> float:
        return self.verdict.best_value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "kind": self.verdict.kind.value,
            "best_value": self.best_value,
            "verdict": self.verdict.to_dict(),
        }


@dataclass
class CavitationReport:
    """네 공동화 적분과 종합 판정"""
    IQ: IntegralResult
    IK: IntegralResult
    ID: IntegralResult
    IL: IntegralResult
    dimension: int
    verdict: CavitationVerdict = CavitationVerdict.UNDETERMINED
    fired_rule: Optional[str] = None
    contradiction: bool = False
    modulus_trend: List[Dict[str, float]] = field(default_factory=list)
    preserves_ring_insides: bool = True
    warnings: List[str] = field(default_factory=list)
    grid: Dict[str, Any] = field(default_factory=dict)

    @property
    def integrals(self) -> List[IntegralResult]:
        return [self.IQ, self.IK, self.ID, self.IL]

    def evidence_table(self) -> List[Dict[str, float]]:
        """ε 별 (IQ, IK, ID, IL) 표"""
        rows = []
        for index, (epsilon, _) in enumerate(self.IQ.partials):
            row = {"epsilon": epsilon}
            for integral in self.integrals:
                row[integral.name] = integral.partials[index][1]
            rows.append(row)
        return rows

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "fired_rule": self.fired_rule,
            "contradiction": self.contradiction,
            "integrals": {integral.name: integral.to_dict() for integral in self.integrals},
            "evidence": self.evidence_table(),
            "modulus_trend": self.modulus_trend,
            "preserves_ring_insides": self.preserves_ring_insides,
            "warnings": list(self.warnings),
            "grid": self.grid,
        }


def truncated_partials(moments: GridMoments, k_min: int) -> Dict[str, np.ndarray]:
    """
    ε_k = 2^{−k}, k = k_min..k_max 에서의 절단 적분값

    Args:
        moments: octave_grid 위의 부분합
        k_min: 가장 큰 ε 의 지수

    Returns:
        Dict: "epsilon", "IQ", "IK", "ID", "IL" 배열
    """
    grid = moments.grid
    n = grid.n
    k_max = grid.radial_count // grid.octave_cells
    if not (1 <= k_min < k_max):
        raise ParameterError(f"need 1 ≤ k_min < k_max, got k_min={k_min}, k_max={k_max}")

    # 블록 = 옥타브, 행 0 이 가장 안쪽
    inner_Q = np.cumsum(moments.direction_sums["Q"][::-1], axis=0)
    inner_K = np.cumsum(moments.direction_sums["K_root"][::-1], axis=0)
    outer_D = octave_cumulative(outer_radial_power(moments.radial_sums["D"], grid), grid)
    outer_L = octave_cumulative(outer_radial_power(moments.radial_sums["L"], grid), grid)

    def sphere_power(inner: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            powered = np.where(inner > 0.0, inner, np.inf) ** (1.0 - n)
        return np.sum(powered * grid.sphere_weights, axis=-1)

    ks = np.arange(k_min, k_max + 1)
    rows = ks - 1
    return {
        "k": ks,
        "epsilon": 2.0 ** (-ks.astype(float)),
        "IQ": sphere_power(inner_Q[rows]),
        "IK": sphere_power(inner_K[rows]),
        "ID": outer_D[rows],
        "IL": outer_L[rows],
    }


def _trend(partials: Dict[str, np.ndarray], n: int) -> List[Dict[str, float]]:
    # 하한 = I_Q(ε), 상한 = I_D(ε)^{1−n}
    trend = []
    for epsilon, lower, inner_D in zip(partials["epsilon"], partials["IQ"], partials["ID"]):
        upper = inner_D ** (1.0 - n) if inner_D > 0.0 else float("inf")
        mo_low, mo_high = family_interval_to_ring(lower, upper, n)
        trend.append({"epsilon": float(epsilon), "mo_low": mo_low, "mo_high": mo_high})
    return trend


def _octave_moments(mapping: MappingSpec, grid: Optional[QuadratureGrid], seed: Optional[int],
                    workers: int) -> GridMoments:
    if grid is None:
        grid = octave_grid(mapping.dimension, seed=seed)
    elif grid.octave_cells is None:
        k_max = int(round(-np.log2(grid.r)))
        if grid.R != 1.0 or not np.isclose(grid.r, 2.0 ** -k_max, rtol=1e-12, atol=0.0):
            raise ParameterError(f"cavitation integrals need a grid over (2^-k, 1), got ({grid.r!r}, {grid.R!r})")
        logger.info(f"octave 구조가 없는 격자를 k_max={k_max} octave 격자로 재생성")
        grid = octave_grid(mapping.dimension, k_max=k_max, m=grid.radial_m,
                           sphere_level=grid.sphere_level, seed=grid.seed)
    return grid_moments(mapping, grid, workers)


def modulus_trend(mapping: MappingSpec, grid: Optional[QuadratureGrid] = None, k_min: Optional[int] = None,
                  workers: int = 0) -> List[Dict[str, float]]:
    """
    ε_k 별 mo f(A(ε, 1)) 구간

    Returns:
        List: {"epsilon", "mo_low", "mo_high"} 목록
    """
    k_min = QUADRATURE_CONFIG["k_min"] if k_min is None else int(k_min)
    moments = _octave_moments(mapping, grid, None, workers)
    return _trend(truncated_partials(moments, k_min), mapping.dimension)


def cavitation_integrals(mapping: MappingSpec, grid: Optional[QuadratureGrid] = None,
                         k_min: Optional[int] = None, seed: Optional[int] = None,
                         workers: int = 0) -> CavitationReport:
    """
    네 공동화 적분의 절단값 계산과 극한 분류 (종합 판정 전)

    Args:
        mapping: 대상 사상
        grid: octave_grid 격자 (없으면 설정 기본값으로 생성)
        k_min: 가장 큰 ε 의 지수
        seed: Monte Carlo 시드 (n ≥ 4)
        workers: 워커 수

    Returns:
        CavitationReport: 적분과 판정 근거 (verdict 는 Undetermined)
    """
    k_min = QUADRATURE_CONFIG["k_min"] if k_min is None else int(k_min)
    moments = _octave_moments(mapping, grid, seed, workers)
    partials = truncated_partials(moments, k_min)
    epsilons = [float(e) for e in partials["epsilon"]]

    warnings = []
    if moments.irregular_fraction > 0.0:
        warnings.append(f"irregular node fraction {moments.irregular_fraction:.3e} excluded")

    results = {}
    for name, direction in (("IQ", LimitDirection.OUTER_VALUE), ("IK", LimitDirection.OUTER_VALUE),
                            ("ID", LimitDirection.INNER_INTEGRAL), ("IL", LimitDirection.INNER_INTEGRAL)):
        series = list(zip(epsilons, [float(v) for v in partials[name]]))
        verdict = limit_classify(series, direction)
        if verdict.kind == VerdictKind.INCONCLUSIVE:
            warnings.append(f"{name} limit is inconclusive: {verdict.note}")
        results[name] = IntegralResult(name=name, verdict=verdict, partials=series)
        logger.info(f"'{mapping.label}' {name}: {verdict.kind.value} (model={verdict.model})")

    return CavitationReport(
        IQ=results["IQ"], IK=results["IK"], ID=results["ID"], IL=results["IL"],
        dimension=mapping.dimension,
        modulus_trend=_trend(partials, mapping.dimension),
        preserves_ring_insides=mapping.preserves_ring_insides,
        warnings=warnings,
        grid=moments.grid.grid_identity(),
    )


def _positive(result: IntegralResult, n: int) -> bool:
    threshold = CLASSIFIER_CONFIG["positivity_factor"] * sphere_area(n)
    return result.verdict.kind == VerdictKind.CONVERGES_TO and result.verdict.value > threshold


def _infinite(result: IntegralResult) -> bool:
    return result.verdict.kind == VerdictKind.DIVERGES_TO_INFINITY


def classify_cavitation(report: CavitationReport) -> CavitationReport:
    """
    적분 판정으로부터 종합 판정

    I_Q 또는 I_K 가 양수 → Cavitation, I_D 또는 I_L 이 발산 → NoCavitation.
    둘 다 성립하면 모순 플래그를 세우고 Undetermined.

    Args:
        report: cavitation_integrals 결과

    Returns:
        CavitationReport: verdict, fired_rule, contradiction 이 채워진 리포트
    """
    n = report.dimension
    cavitation_rules = [rule for rule, result in ((FiredRule.IQ_POSITIVE, report.IQ), (FiredRule.IK_POSITIVE, report.IK))
                        if _positive(result, n)]
    absence_rules = [rule for rule, result in ((FiredRule.ID_INFINITE, report.ID), (FiredRule.IL_INFINITE, report.IL))
                     if _infinite(result)]

    report.contradiction = bool(cavitation_rules and absence_rules)
    if report.contradiction:
        fired = ", ".join(rule.value for rule in cavitation_rules + absence_rules)
        message = f"contradictory evidence ({fired}): numerical misclassification suspected"
        logger.warning(message)
        report.warnings.append(message)
        report.verdict = CavitationVerdict.UNDETERMINED
        report.fired_rule = None
    elif cavitation_rules:
        report.verdict = CavitationVerdict.CAVITATION
        report.fired_rule = cavitation_rules[0].value
    elif absence_rules:
        report.verdict = CavitationVerdict.NO_CAVITATION
        report.fired_rule = absence_rules[0].value
    else:
        report.verdict = CavitationVerdict.UNDETERMINED
        report.fired_rule = None

    logger.info(f"공동화 판정: {report.verdict.value} ({report.fired_rule or 'no rule fired'})")
    return report
