"""
사상 표현과 카탈로그 테스트
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from core.errors import DomainError, EvaluationError, ParameterError
from mapping import (
    MappingSpec,
    catalog_get,
    check_profile_monotone,
    conjugate_rotation,
    evaluate,
    exact_ring_modulus,
    fd_jacobian,
    jacobian,
    mapping_catalog,
    random_rotation,
    scaled_jacobian,
)
from mapping.mapping_spec import RadialProfile

CATALOG_CASES = [
    ("identity", {}),
    ("scaling", {"c": 2.0}),
    ("f1", {"alpha": 0.5}),
    ("f2", {}),
    ("f3", {}),
    ("radial", {"power": 2.0}),
]


def _random_points(rng, count, n, low=0.08, high=0.95):
    directions = rng.standard_normal((count, n))
    directions /= np.linalg.norm(directions, axis=-1, keepdims=True)
    radii = rng.uniform(low, high, count)
    return radii[:, None] * directions


def test_evaluate_examples():
    """카탈로그 사상 평가 예제"""
    identity = catalog_get("identity", 3)
    np.testing.assert_allclose(evaluate(identity, [0.3, 0.0, 0.0]), [0.3, 0.0, 0.0])

    f1 = catalog_get("f1", 3, {"alpha": 0.5})
    np.testing.assert_allclose(evaluate(f1, [0.25, 0.0, 0.0]), [0.75, 0.0, 0.0], rtol=1e-14)

    f2 = catalog_get("f2", 3)
    np.testing.assert_allclose(evaluate(f2, [0.5, 0.0, 0.0]), [0.5 * np.exp(-1.0), 0.0, 0.0], rtol=1e-14)


def test_f3_on_real_axis():
    """f₃(r, 0, x₃) = (r cos(2 log r), r sin(2 log r), x₃)"""
    f3 = catalog_get("f3", 3)
    r, x3 = 0.4, 0.2
    expected = [r * np.cos(2 * np.log(r)), r * np.sin(2 * np.log(r)), x3]
    np.testing.assert_allclose(evaluate(f3, [r, 0.0, x3]), expected, atol=1e-14)


def test_f3_on_passive_axis():
    """x₁ = x₂ = 0 이면 f₃(x) = x"""
    f3 = catalog_get("f3", 3)
    np.testing.assert_allclose(evaluate(f3, [0.0, 0.0, 0.5]), [0.0, 0.0, 0.5], atol=0.0)
    points = np.array([[0.0, 0.0, -0.7], [0.3, 0.0, 0.1]])
    values = evaluate(f3, points)
    assert np.all(np.isfinite(values))
    np.testing.assert_allclose(values[0], [0.0, 0.0, -0.7], atol=0.0)
    np.testing.assert_allclose(np.linalg.norm(values, axis=-1), np.linalg.norm(points, axis=-1), rtol=1e-14)


def test_evaluate_rejects_points_outside_punctured_ball():
    """|x| = 0 또는 |x| ≥ 1 은 정의역 오류"""
    identity = catalog_get("identity", 3)
    with pytest.raises(DomainError):
        evaluate(identity, [0.0, 0.0, 0.0])
    with pytest.raises(DomainError):
        evaluate(identity, [1.0, 0.0, 0.0])
    with pytest.raises(ParameterError):
        evaluate(identity, [0.1, 0.2])


def test_non_finite_values_are_reported():
    """유한하지 않은 값은 EvaluationError"""
    broken = MappingSpec(dimension=2, evaluate_rule=lambda x: x * np.inf, label="broken")
    with pytest.raises(EvaluationError):
        evaluate(broken, [0.5, 0.0])


def test_jacobian_examples():
    """항등, 스케일링, f₁ 야코비"""
    np.testing.assert_allclose(jacobian(catalog_get("identity", 3), [0.1, 0.2, 0.3]), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(jacobian(catalog_get("scaling", 3, {"c": 3.0}), [0.1, 0.2, 0.3]), 3.0 * np.eye(3),
                               rtol=1e-14)
    f1 = catalog_get("f1", 3, {"alpha": 0.5})
    np.testing.assert_allclose(jacobian(f1, [0.25, 0.0, 0.0]), np.diag([0.5, 3.0, 3.0]), rtol=1e-13, atol=1e-15)


def test_identity_catalog_map_in_the_plane():
    """("identity", 2) 의 야코비는 항상 단위행렬"""
    identity = catalog_get("identity", 2)
    points = _random_points(np.random.default_rng(3), 20, 2)
    np.testing.assert_allclose(jacobian(identity, points), np.broadcast_to(np.eye(2), (20, 2, 2)), atol=1e-15)


def test_f2_scaled_jacobian_survives_underflow():
    """f₂ 의 야코비는 |x| 가 작으면 언더플로하지만 분해는 유한"""
    f2 = catalog_get("f2", 3)
    log_scale, matrix = scaled_jacobian(f2, [1e-4, 0.0, 0.0])
    assert log_scale == pytest.approx(1.0 - 1e4)
    np.testing.assert_allclose(np.diag(matrix), [1.0 + 1e4, 1.0, 1.0], rtol=1e-12)


@pytest.mark.parametrize("name,params", CATALOG_CASES)
def test_analytic_jacobian_matches_finite_differences(name, params):
    """해석적 야코비와 중앙 차분의 성분별 상대 오차 < 1e−6"""
    mapping = catalog_get(name, 3, params)
    points = _random_points(np.random.default_rng(11), 1000, 3)
    if name == "f3":
        # z = x₁ + i x₂ 가 0 에 가까우면 차분 오차가 커짐
        points = points[np.hypot(points[:, 0], points[:, 1]) > 0.05]

    analytic = jacobian(mapping, points)
    numeric = fd_jacobian(mapping.evaluate_rule, points)
    scale = np.max(np.abs(analytic), axis=(-2, -1), keepdims=True)
    assert np.max(np.abs(analytic - numeric) / scale) < 1e-6


def test_catalog_parameter_validation():
    """알 수 없는 이름, 범위 밖 매개변수"""
    with pytest.raises(ParameterError):
        catalog_get("nope", 3)
    with pytest.raises(ParameterError):
        catalog_get("f1", 3, {"alpha": 1.5})
    with pytest.raises(ParameterError):
        catalog_get("scaling", 3, {"c": -1.0})
    with pytest.raises(ParameterError):
        catalog_get("f2", 3, {"alpha": 0.5})
    with pytest.raises(ParameterError):
        catalog_get("radial", 3)
    with pytest.raises(ParameterError):
        catalog_get("identity", 1)


def test_catalog_describe_lists_every_map():
    """카탈로그 설명"""
    names = [entry["name"] for entry in mapping_catalog.describe()]
    assert names == ["identity", "scaling", "f1", "f2", "f3", "radial"]
    f1_entry = next(entry for entry in mapping_catalog.describe() if entry["name"] == "f1")
    assert "alpha" in f1_entry["parameters"]


def test_radial_profile_monotonicity_check():
    """감소하는 프로파일은 거부"""
    decreasing = RadialProfile(phi=lambda t: 1.0 - 0.5 * t, dphi=lambda t: -0.5 + 0.0 * t, name="decreasing")
    with pytest.raises(ParameterError):
        check_profile_monotone(decreasing)
    with pytest.raises(ParameterError):
        catalog_get("radial", 3, {"profile": decreasing})


def test_exact_ring_modulus():
    """둥근 상 링의 모듈러스"""
    f1 = catalog_get("f1", 3, {"alpha": 0.5})
    assert exact_ring_modulus(f1, 0.25, 1.0) == pytest.approx(np.log(4.0 / 3.0), rel=1e-13)
    scaling = catalog_get("scaling", 3, {"c": 5.0})
    assert exact_ring_modulus(scaling, 0.1, 0.5) == pytest.approx(np.log(5.0), rel=1e-13)
    assert exact_ring_modulus(catalog_get("f3", 3), 0.1, 0.5) is None


def test_conjugate_rotation_with_identity_matrix():
    """A = I 이면 평가값이 같음"""
    f3 = catalog_get("f3", 3)
    conjugated = conjugate_rotation(f3, np.eye(3))
    points = _random_points(np.random.default_rng(5), 50, 3)
    np.testing.assert_allclose(evaluate(conjugated, points), evaluate(f3, points), atol=1e-15)


def test_radial_maps_commute_with_rotations():
    """f̃(Ax) = A f₁(x)"""
    f1 = catalog_get("f1", 3, {"alpha": 0.5})
    rng = np.random.default_rng(7)
    A = random_rotation(3, rng)
    conjugated = conjugate_rotation(f1, A)
    points = _random_points(rng, 50, 3)
    np.testing.assert_allclose(evaluate(conjugated, points @ A.T), evaluate(f1, points) @ A.T, atol=1e-14)


def test_f3_conjugated_by_axial_rotation():
    """x₃ 축 회전 공역은 직접 계산과 일치"""
    f3 = catalog_get("f3", 3)
    theta = 0.7
    A = np.array([[np.cos(theta), -np.sin(theta), 0.0],
                  [np.sin(theta), np.cos(theta), 0.0],
                  [0.0, 0.0, 1.0]])
    conjugated = conjugate_rotation(f3, A)
    points = _random_points(np.random.default_rng(13), 100, 3)
    direct = evaluate(f3, points @ A) @ A.T
    np.testing.assert_allclose(evaluate(conjugated, points), direct, atol=1e-14)


@pytest.mark.parametrize("name,params", CATALOG_CASES)
def test_conjugated_jacobian_consistency(name, params):
    """jacobian(f̃, Ax) = A f'(x) Aᵀ"""
    mapping = catalog_get(name, 3, params)
    rng = np.random.default_rng(17)
    A = random_rotation(3, rng)
    points = _random_points(rng, 100, 3)
    conjugated = conjugate_rotation(mapping, A)
    expected = A @ jacobian(mapping, points) @ A.T
    np.testing.assert_allclose(jacobian(conjugated, points @ A.T), expected, rtol=1e-9, atol=1e-12)


def test_conjugate_rotation_rejects_non_rotations():
    """직교가 아니거나 det = −1 인 행렬"""
    identity = catalog_get("identity", 3)
    with pytest.raises(ParameterError):
        conjugate_rotation(identity, np.diag([1.0, 1.0, 1.0 + 1e-6]))
    with pytest.raises(ParameterError):
        conjugate_rotation(identity, np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(ParameterError):
        conjugate_rotation(identity, np.eye(2))


def test_mapping_spec_is_immutable():
    """MappingSpec 는 생성 후 변경 불가"""
    mapping = catalog_get("f1", 3, {"alpha": 0.5})
    with pytest.raises(Exception):
        mapping.label = "other"
    with pytest.raises(TypeError):
        mapping.params["alpha"] = 0.9
    assert mapping.to_dict()["preserves_ring_insides"] is True
