"""
Modulus - 링 모듈러스 상하한, 공동화 적분과 판정, 부등식 점검
"""

from .rings import (
    ConversionDirection,
    family_interval_to_ring,
    modulus_conversions,
    ring_modulus_spherical,
    teichmuller_constant_bound,
)
from .sampling import GridMoments, annulus_grid, grid_moments
from .bounds import (
    DensityPair,
    ModulusBounds,
    RadiusBracket,
    admissible_normalize,
    bounds_sweep,
    canonical_densities,
    classical_double_bound,
    double_bound_with_densities,
    exact_family_modulus,
    lower_bound_sigma,
    modulus_bounds,
    modulus_bracket,
    radius_bracket,
    sphere_extrema,
    upper_bound_extremal,
)
from .cavitation import (
    CavitationReport,
    CavitationVerdict,
    FiredRule,
    IntegralResult,
    cavitation_integrals,
    classify_cavitation,
    modulus_trend,
    truncated_partials,
)
from .inequalities import InequalityCheck, check_bgmv, check_fundamental

__all__ = [
    'ConversionDirection',
    'family_interval_to_ring',
    'modulus_conversions',
    'ring_modulus_spherical',
    'teichmuller_constant_bound',
    'GridMoments',
    'annulus_grid',
    'grid_moments',
    'DensityPair',
    'ModulusBounds',
    'RadiusBracket',
    'admissible_normalize',
    'bounds_sweep',
    'canonical_densities',
    'classical_double_bound',
    'double_bound_with_densities',
    'exact_family_modulus',
    'lower_bound_sigma',
    'modulus_bounds',
    'modulus_bracket',
    'radius_bracket',
    'sphere_extrema',
    'upper_bound_extremal',
    'CavitationReport',
    'CavitationVerdict',
    'FiredRule',
    'IntegralResult',
    'cavitation_integrals',
    'classify_cavitation',
    'modulus_trend',
    'truncated_partials',
    'InequalityCheck',
    'check_bgmv',
    'check_fundamental',
]
