"""
왜곡 부등식 / 기본 부등식 점검 테스트
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from core.errors import DomainError
from mapping import catalog_get
from modulus import InequalityCheck, check_bgmv, check_fundamental
from quadrature import build_grid

SQRT2_PLUS_1_CUBED = (np.sqrt(2.0) + 1.0) ** 3

CATALOG_CASES = [
    ("identity", {}),
    ("scaling", {"c": 2.0}),
    ("f1", {"alpha": 0.5}),
    ("f2", {}),
    ("f3", {}),
    ("radial", {"power": 2.0}),
]
INNER_RADII = [0.05, 0.1, 0.2, 0.3, 0.5]
OUTER_RADII = [0.6, 0.7, 0.8, 0.9, 1.0]


@pytest.mark.parametrize("name,params", CATALOG_CASES)
def test_inequalities_hold_on_radius_sweep(name, params):
    """카탈로그 사상은 모든 (r, R) 에서 두 부등식을 만족"""
    mapping = catalog_get(name, 2, params)
    for r in INNER_RADII:
        for R in OUTER_RADII:
            grid = build_grid(2, r, R, sphere_level=1, m=1024)
            bgmv = check_bgmv(mapping, r, R, grid)
            fundamental = check_fundamental(mapping, r, R, grid=grid)
            assert bgmv.residual >= -1e-6 * bgmv.scale, (name, r, R, bgmv.to_dict())
            assert fundamental.residual >= -1e-6 * fundamental.scale, (name, r, R, fundamental.to_dict())
            assert bgmv.holds and fundamental.holds


def test_quick_rotation_saturates_fundamental_inequality():
    """f₃ 는 L_f 가 상수이므로 기본 부등식이 등식"""
    f3 = catalog_get("f3", 3)
    r, R = 0.1, 0.9
    check = check_fundamental(f3, r, R, grid=build_grid(3, r, R, sphere_level=1, m=256))
    assert check.K == pytest.approx(SQRT2_PLUS_1_CUBED, rel=1e-9)
    assert check.lhs == pytest.approx(SQRT2_PLUS_1_CUBED * np.log(R / r), rel=1e-9)
    assert abs(check.residual) <= 5e-3 * check.scale


def test_quick_rotation_distortion_inequality():
    """f₃: |f(x)| = |x| 이므로 좌변 0, 우변 (L − 1)·log(R/r)"""
    f3 = catalog_get("f3", 3)
    r, R = 0.2, 0.7
    check = check_bgmv(f3, r, R, build_grid(3, r, R, sphere_level=1, m=256))
    assert check.lhs == pytest.approx(0.0, abs=1e-12)
    assert check.rhs == pytest.approx((SQRT2_PLUS_1_CUBED - 1.0) * np.log(R / r), rel=1e-9)
    assert check.holds


def test_explicit_constant_in_fundamental_inequality():
    """K 를 지정하면 K·log(R/r) 과 비교, 너무 작은 K 는 위반"""
    f1 = catalog_get("f1", 3, {"alpha": 0.5})
    grid = build_grid(3, 0.2, 0.9, sphere_level=1, m=256)
    generous = check_fundamental(f1, 0.2, 0.9, K=1e3, grid=grid)
    assert generous.rhs == pytest.approx(1e3 * np.log(4.5))
    assert generous.holds

    too_small = check_fundamental(f1, 0.2, 0.9, K=1.0, grid=grid)
    assert not too_small.holds
    assert float(too_small) < 0.0


def test_identity_inequalities_are_equalities():
    """항등 사상: 두 잔차 모두 0 근처"""
    identity = catalog_get("identity", 3)
    grid = build_grid(3, 0.1, 1.0, sphere_level=1, m=256)
    bgmv = check_bgmv(identity, 0.1, 1.0, grid)
    assert bgmv.residual == pytest.approx(0.0, abs=1e-6)
    fundamental = check_fundamental(identity, 0.1, 1.0, grid=grid)
    assert fundamental.residual == pytest.approx(0.0, abs=1e-9)


def test_check_serialization():
    """to_dict 에 잔차와 판정 포함"""
    check = InequalityCheck(name="fundamental", r=0.1, R=0.5, lhs=2.0, rhs=3.0, K=1.5)
    payload = check.to_dict()
    assert payload["residual"] == pytest.approx(1.0)
    assert payload["scale"] == pytest.approx(3.0)
    assert payload["holds"] is True
    assert payload["K"] == 1.5


def test_interval_validation():
    """0 < r < R ≤ 1"""
    identity = catalog_get("identity", 2)
    with pytest.raises(DomainError):
        check_bgmv(identity, 0.5, 0.4)
    with pytest.raises(DomainError):
        check_fundamental(identity, 0.1, 1.5)


def test_f2_distortion_equality_on_coarse_grid():
    """f₂ 는 왜곡 부등식이 등식 (양변 1/r − 1/R), 거친 격자에서도 성립으로 판정"""
    f2 = catalog_get("f2", 3)
    r, R = 0.05, 0.6
    check = check_bgmv(f2, r, R, build_grid(3, r, R, sphere_level=1, m=256))
    assert check.lhs == pytest.approx(1.0 / r - 1.0 / R, rel=1e-6)
    assert check.rhs == pytest.approx(1.0 / r - 1.0 / R, rel=1e-6)
    assert check.quadrature_error > 0.0
    assert check.holds
    assert check.to_dict()["quadrature_error"] == check.quadrature_error


def test_quadrature_error_widens_tolerance():
    """오차 추정만큼 음의 잔차 허용"""
    assert not InequalityCheck(name="distortion", r=0.1, R=0.5, lhs=1.0, rhs=0.99).holds
    assert InequalityCheck(name="distortion", r=0.1, R=0.5, lhs=1.0, rhs=0.99, quadrature_error=0.02).holds
