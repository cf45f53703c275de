"""
Quadrature - 구면/반경 적분 격자와 ε → 0 극한 분류
"""

from .grids import (
    QuadratureGrid,
    build_grid,
    integrate_annulus,
    integrate_radial,
    integrate_sphere,
    octave_cumulative,
    octave_grid,
    radial_nodes,
    sphere_area,
    sphere_nodes,
)
from .limits import LimitDirection, LimitVerdict, VerdictKind, limit_classify

__all__ = [
    'QuadratureGrid',
    'build_grid',
    'integrate_annulus',
    'integrate_radial',
    'integrate_sphere',
    'octave_cumulative',
    'octave_grid',
    'radial_nodes',
    'sphere_area',
    'sphere_nodes',
    'LimitDirection',
    'LimitVerdict',
    'VerdictKind',
    'limit_classify',
]
