"""
명령별 계산 - 각 명령은 CommandResult 를 돌려줍니다.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional
import logging

from cli.run_config import RunConfig
from dilatation.field import sample_field
from dilatation.pointwise import check_chain
from mapping.catalog import mapping_catalog
from mapping.mapping_spec import MappingSpec
from modulus.bounds import (
    bounds_sweep,
    canonical_densities,
    classical_double_bound,
    double_bound_with_densities,
    modulus_bounds,
    radius_bracket,
)
from modulus.cavitation import CavitationReport, cavitation_integrals, classify_cavitation
from modulus.inequalities import check_bgmv, check_fundamental
from modulus.rings import family_interval_to_ring, teichmuller_constant_bound
from modulus.sampling import grid_moments
from quadrature.grids import QuadratureGrid, build_grid, octave_grid, radial_nodes, sphere_nodes

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    """명령 실행 결과 - results 는 JSON, table 은 CSV 로 출력"""
    results: Dict[str, Any] = field(default_factory=dict)
    table: List[Dict[str, Any]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    grid: Dict[str, Any] = field(default_factory=dict)
    verdict: Optional[str] = None


def _annulus_grid(config: RunConfig) -> QuadratureGrid:
    return build_grid(config.n, config.r, config.R, config.sphere_level, config.radial_m, config.seed)


def run_dilat(config: RunConfig, mapping: MappingSpec) -> CommandResult:
    """격자점별 DilatationSample 표"""
    t, _, _ = radial_nodes(config.r, config.R, max(8, config.dilat_radial))
    t = t[:: max(1, len(t) // config.dilat_radial)][: config.dilat_radial]
    nodes, _ = sphere_nodes(config.n, config.sphere_level, config.seed)
    points = t[:, None, None] * nodes[None, :, :]
    field_ = sample_field(mapping, points, config.threads, with_dual=config.dual)

    table = []
    for i, radius in enumerate(t):
        for j in range(len(nodes)):
            row = {"t": float(radius)}
            row.update({f"u{k + 1}": float(nodes[j, k]) for k in range(config.n)})
            row.update({
                "K": float(field_.K[i, j]), "L": float(field_.L[i, j]),
                "D": float(field_.D[i, j]), "Q": float(field_.Q[i, j]),
                "log_det": float(field_.log_det[i, j]), "regular": bool(field_.regular[i, j]),
            })
            if field_.T is not None:
                row["T"] = float(field_.T[i, j])
            table.append(row)

    violation = check_chain(field_, config.n)
    results = {"summary": field_.summary(), "chain_violation": violation, "samples": len(table)}
    warnings = []
    if field_.irregular_fraction > 0.0:
        warnings.append(f"irregular point fraction {field_.irregular_fraction:.3e}")
    return CommandResult(results=results, table=table, warnings=warnings,
                         grid={"n": config.n, "radial": len(t), "sphere_level": config.sphere_level,
                               "sphere_nodes": len(nodes), "seed": config.seed})


def run_bounds(config: RunConfig, mapping: MappingSpec) -> CommandResult:
    """방향 / 고전 / 표준 밀도 상하한, R = 1 이면 공동 반지름 구간"""
    grid = _annulus_grid(config)
    moments = grid_moments(mapping, grid, config.threads)
    bounds = modulus_bounds(mapping, config.r, config.R, moments=moments)
    classical = classical_double_bound(mapping, config.r, config.R, moments=moments)
    densities = double_bound_with_densities(mapping, config.r, config.R,
                                            canonical_densities(config.r, config.R, config.n), moments=moments)
    mo_low, mo_high = family_interval_to_ring(bounds.lower, bounds.upper, config.n)
    constant, exact = teichmuller_constant_bound(config.n)

    results = {
        "directional": bounds.to_dict(),
        "classical": classical.to_dict(),
        "canonical_densities": densities.to_dict(),
        "ring_modulus_interval": [mo_low, mo_high],
        "teichmuller_constant": {"value": constant, "exact": exact},
        "irregular_fraction": moments.irregular_fraction,
    }
    warnings = []
    if config.R == 1.0:
        results["radius_bracket"] = radius_bracket(mapping, config.r, grid, bounds=bounds).to_dict()
    if not mapping.preserves_ring_insides:
        warnings.append("map is not asserted to preserve ring insides; radius bracket assumptions may fail")

    table = [{"r": bounds.r, "lower": bounds.lower, "upper": bounds.upper, "exact": bounds.exact}]
    if config.sweep:
        sweep = bounds_sweep(mapping, config.r, config.R, config.sweep, grid, config.threads)
        table = [{"r": item.r, "lower": item.lower, "upper": item.upper, "exact": item.exact} for item in sweep]
        results["sweep"] = table
    return CommandResult(results=results, table=table, warnings=warnings, grid=grid.grid_identity())


def _integrals(config: RunConfig, mapping: MappingSpec) -> CavitationReport:
    grid = octave_grid(config.n, config.k_max, config.radial_m, config.sphere_level, config.seed)
    return cavitation_integrals(mapping, grid, config.k_min, workers=config.threads)


def run_integrals(config: RunConfig, mapping: MappingSpec) -> CommandResult:
    """네 공동화 적분과 ε 증거표"""
    report = _integrals(config, mapping)
    payload = report.to_dict()
    for key in ("verdict", "fired_rule", "contradiction"):
        payload.pop(key)
    return CommandResult(results=payload, table=payload["evidence"], warnings=list(report.warnings),
                         grid=report.grid)


def run_classify(config: RunConfig, mapping: MappingSpec) -> CommandResult:
    """공동화 종합 판정"""
    report = classify_cavitation(_integrals(config, mapping))
    payload = report.to_dict()
    return CommandResult(results=payload, table=payload["evidence"], warnings=list(report.warnings),
                         grid=report.grid, verdict=report.verdict.value)


def run_check(config: RunConfig, mapping: MappingSpec) -> CommandResult:
    """왜곡 / 기본 부등식 잔차와 팽창 계수 체인 점검"""
    grid = _annulus_grid(config)
    checks = [
        check_bgmv(mapping, config.r, config.R, grid, config.threads),
        check_fundamental(mapping, config.r, config.R, config.K, grid, config.threads),
    ]
    chain_grid = build_grid(config.n, config.r, config.R, 1, 8, config.seed)
    chain_field = sample_field(mapping, chain_grid.points(), config.threads)
    violation = check_chain(chain_field, config.n)

    warnings = [f"{check.name} inequality residual {check.residual:.3e} is negative"
                for check in checks if not check.holds]
    results = {
        "inequalities": [check.to_dict() for check in checks],
        "chain": {"points": int(chain_field.regular.size), "max_violation": violation,
                  "analytic_jacobian": mapping.has_analytic_jacobian},
    }
    table = [{"name": check.name, "r": check.r, "R": check.R, "lhs": check.lhs, "rhs": check.rhs,
              "residual": check.residual, "holds": check.holds} for check in checks]
    return CommandResult(results=results, table=table, warnings=warnings, grid=grid.grid_identity())


def run_catalog(config: RunConfig, mapping: Optional[MappingSpec]) -> CommandResult:
    """카탈로그 목록"""
    entries = mapping_catalog.describe()
    table = [{"name": entry["name"], "description": entry["description"],
              "parameters": "; ".join(f"{k} in {v}" for k, v in entry["parameters"].items())}
             for entry in entries]
    return CommandResult(results={"maps": entries}, table=table)


COMMANDS: Dict[str, Callable[[RunConfig, Optional[MappingSpec]], CommandResult]] = {
    "dilat": run_dilat,
    "bounds": run_bounds,
    "integrals": run_integrals,
    "classify": run_classify,
    "check": run_check,
    "catalog": run_catalog,
}
