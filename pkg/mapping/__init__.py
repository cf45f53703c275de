"""
Mapping - 천공 단위 구 위의 사상과 카탈로그
"""

from .mapping_spec import (
    MappingSpec,
    RadialProfile,
    check_domain,
    conjugate_rotation,
    evaluate,
    fd_jacobian,
    jacobian,
    random_rotation,
    scaled_jacobian,
)
from .catalog import (
    MappingCatalog,
    catalog_get,
    check_profile_monotone,
    exact_ring_modulus,
    f1_profile,
    f2_profile,
    linear_profile,
    mapping_catalog,
    power_profile,
    quick_rotation_map,
    radial_map,
)

__all__ = [
    'MappingSpec',
    'RadialProfile',
    'check_domain',
    'conjugate_rotation',
    'evaluate',
    'fd_jacobian',
    'jacobian',
    'random_rotation',
    'scaled_jacobian',
    'MappingCatalog',
    'catalog_get',
    'check_profile_monotone',
    'exact_ring_modulus',
    'f1_profile',
    'f2_profile',
    'linear_profile',
    'mapping_catalog',
    'power_profile',
    'quick_rotation_map',
    'radial_map',
]
