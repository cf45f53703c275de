"""
Dilatation - 점별 팽창 계수, 닫힌 형태 / 전수 탐색 검증기, 계수장
"""

from .pointwise import (
    DilatationSample,
    DirectionalExtremes,
    DualEstimate,
    angular_dilatation,
    brute_force_directional,
    chain_values,
    check_chain,
    classical_dilatations,
    dual_dilatation,
    log_dilatations,
    normal_dilatation,
    radial_oracle,
    regularity_mask,
    singular_values,
)
from .field import DilatationField, dilatations_at, sample_field

__all__ = [
    'DilatationSample',
    'DirectionalExtremes',
    'DualEstimate',
    'angular_dilatation',
    'brute_force_directional',
    'chain_values',
    'check_chain',
    'classical_dilatations',
    'dual_dilatation',
    'log_dilatations',
    'normal_dilatation',
    'radial_oracle',
    'regularity_mask',
    'singular_values',
    'DilatationField',
    'dilatations_at',
    'sample_field',
]
