"""
구면 / 반경 적분 격자 테스트
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from core.errors import DomainError, IntegrationError, ParameterError
from quadrature import (
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


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_sphere_weights_sum_to_area(n):
    """Σ w_u = ω_{n−1}"""
    nodes, weights = sphere_nodes(n, 2, seed=0)
    assert weights.sum() == pytest.approx(sphere_area(n), rel=1e-10)
    np.testing.assert_allclose(np.linalg.norm(nodes, axis=-1), 1.0, atol=1e-14)


def test_sphere_area_values():
    """ω₁ = 2π, ω₂ = 4π, ω₃ = 2π²"""
    assert sphere_area(2) == pytest.approx(2.0 * np.pi, rel=1e-14)
    assert sphere_area(3) == pytest.approx(4.0 * np.pi, rel=1e-14)
    assert sphere_area(4) == pytest.approx(2.0 * np.pi ** 2, rel=1e-14)


def test_sphere_rule_integrates_polynomials():
    """∫_{S²} u₁² = 4π/3, ∫_{S¹} u₁² = π"""
    nodes, weights = sphere_nodes(3, 2)
    assert np.sum(nodes[:, 0] ** 2 * weights) == pytest.approx(4.0 * np.pi / 3.0, rel=1e-10)
    assert abs(np.sum(nodes[:, 2] * weights)) < 1e-12

    nodes, weights = sphere_nodes(2, 1)
    assert np.sum(nodes[:, 0] ** 2 * weights) == pytest.approx(np.pi, rel=1e-10)


def test_three_dimensional_rule_size():
    """n=3 규칙은 4·2^level × 8·2^level 노드"""
    nodes, _ = sphere_nodes(3, 1)
    assert nodes.shape == (8 * 16, 3)


def test_monte_carlo_rule_is_seeded_and_antithetic():
    """n ≥ 4: 같은 시드는 같은 노드, (u, −u) 쌍"""
    first, _ = sphere_nodes(4, 1, seed=3, monte_carlo_nodes=101)
    second, _ = sphere_nodes(4, 1, seed=3, monte_carlo_nodes=101)
    other, _ = sphere_nodes(4, 1, seed=4, monte_carlo_nodes=101)
    assert len(first) == 102
    np.testing.assert_array_equal(first, second)
    assert not np.allclose(first, other)
    np.testing.assert_allclose(first.sum(axis=0), 0.0, atol=1e-12)


def test_sphere_nodes_validation():
    """잘못된 차원 / 단계"""
    with pytest.raises(ParameterError):
        sphere_nodes(1, 2)
    with pytest.raises(ParameterError):
        sphere_nodes(3, 0)


def test_radial_weights():
    """Σ w_lin = R − r, Σ w_log = log(R/r)"""
    t, w_lin, w_log = radial_nodes(0.1, 0.9, 64)
    assert w_lin.sum() == pytest.approx(0.8, rel=1e-12)
    assert w_log.sum() == pytest.approx(np.log(9.0), rel=1e-12)
    assert np.all(np.diff(t) > 0.0)
    assert 0.1 < t[0] and t[-1] < 0.9


def test_radial_nodes_validation():
    """0 < r < R ≤ 1, m ≥ 8"""
    with pytest.raises(DomainError):
        radial_nodes(0.5, 0.2, 64)
    with pytest.raises(DomainError):
        radial_nodes(0.0, 0.5, 64)
    with pytest.raises(DomainError):
        radial_nodes(0.5, 1.5, 64)
    with pytest.raises(ParameterError):
        radial_nodes(0.1, 0.5, 4)


def test_integrate_radial_measures():
    """∫_{0.1}^{1} dt = 0.9, ∫ t dt = 0.495, ∫ dt/t = log 10"""
    grid = build_grid(3, 0.1, 1.0, sphere_level=1, m=4096)
    ones = np.ones(grid.radial_count)
    assert integrate_radial(ones, grid) == pytest.approx(0.9, rel=1e-6)
    assert integrate_radial(grid.radial_nodes, grid) == pytest.approx(0.495, rel=1e-6)
    assert integrate_radial(ones, grid, measure="dt/t") == pytest.approx(np.log(10.0), rel=1e-12)
    with pytest.raises(ParameterError):
        integrate_radial(ones, grid, measure="dr")


def test_integrate_sphere_over_last_axis():
    """마지막 축 구면 적분"""
    grid = build_grid(3, 0.1, 1.0, sphere_level=1, m=16)
    values = np.ones((grid.radial_count, grid.sphere_count))
    np.testing.assert_allclose(integrate_sphere(values, grid), 4.0 * np.pi, rtol=1e-12)


def test_integrate_annulus_volume():
    """g ≡ 1 on A(0.5, 1) → 4π(1 − 0.125)/3"""
    grid = build_grid(3, 0.5, 1.0, sphere_level=1, m=2048)
    value = integrate_annulus(lambda x: np.ones(x.shape[:-1]), grid)
    assert value == pytest.approx(4.0 * np.pi * 0.875 / 3.0, rel=1e-6)


def test_integrate_annulus_scale_invariant_density():
    """g = |x|^{−3} → 4π log(1/r)"""
    grid = build_grid(3, 0.01, 1.0, sphere_level=1, m=256)
    value = integrate_annulus(lambda x: np.linalg.norm(x, axis=-1) ** -3, grid)
    assert value == pytest.approx(4.0 * np.pi * np.log(100.0), rel=1e-10)


def test_integrate_annulus_odd_integrand_vanishes():
    """홀함수 적분은 0"""
    grid = build_grid(3, 0.2, 0.9, sphere_level=2, m=128)
    assert abs(integrate_annulus(lambda x: x[..., 0], grid)) < 1e-12


def test_integrate_annulus_rejects_too_many_irregular_nodes():
    """비정칙 노드가 허용치를 넘으면 IntegrationError"""
    grid = build_grid(2, 0.2, 0.9, sphere_level=1, m=64)

    def half_nan(x):
        return np.where(x[..., 0] > 0.0, np.nan, 1.0)

    with pytest.raises(IntegrationError) as excinfo:
        integrate_annulus(half_nan, grid)
    assert excinfo.value.fraction == pytest.approx(0.5)
    assert excinfo.value.to_dict()["irregular_fraction"] == pytest.approx(0.5)

    # 허용치를 넘지 않으면 제외하고 적분
    assert integrate_annulus(half_nan, grid, tolerance=0.6) > 0.0


def test_octave_grid_boundaries():
    """ε_k = 2^{−k} 가 칸 경계"""
    grid = octave_grid(3, k_max=10, m=320, sphere_level=1)
    assert grid.octave_cells == 32
    assert grid.r == pytest.approx(2.0 ** -10)
    cumulative = octave_cumulative(grid.radial_log_weights, grid)
    np.testing.assert_allclose(cumulative, np.arange(1, 11) * np.log(2.0), rtol=1e-12)
    assert grid.grid_identity()["octave_cells"] == 32


def test_octave_cumulative_needs_octave_grid():
    """일반 격자에는 옥타브 구조가 없음"""
    grid = build_grid(3, 0.1, 1.0, sphere_level=1, m=64)
    with pytest.raises(ParameterError):
        octave_cumulative(grid.radial_log_weights, grid)


def test_grid_identity():
    """리포트용 격자 정보"""
    grid = build_grid(4, 0.1, 0.5, sphere_level=1, m=32, seed=9)
    identity = grid.grid_identity()
    assert identity["n"] == 4
    assert identity["seed"] == 9
    assert identity["sphere_rule"] == "monte-carlo-antithetic"
    assert grid.points().shape == (32, grid.sphere_count, 4)
