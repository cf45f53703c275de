"""
사상 표현식 파서 테스트
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from cli.expression import parse_map_expression
from core.errors import ParameterError, ParseError
from mapping import evaluate, jacobian


def test_catalog_expression():
    """catalog:f1(alpha=0.5) → f₁"""
    mapping = parse_map_expression("catalog:f1(alpha=0.5)", 3)
    assert mapping.label == "f1"
    assert mapping.has_analytic_jacobian
    np.testing.assert_allclose(evaluate(mapping, [0.25, 0.0, 0.0]), [0.75, 0.0, 0.0], rtol=1e-14)


def test_catalog_expression_without_parameters():
    """괄호 생략, 공백 허용"""
    assert parse_map_expression("catalog:f2", 3).label == "f2"
    assert parse_map_expression(" catalog : identity ( ) ", 2).label == "identity"
    assert parse_map_expression("catalog:scaling(c=1e-1)", 3).params["c"] == pytest.approx(0.1)


def test_catalog_parameter_out_of_range():
    """α = 1.5 는 범위 밖"""
    with pytest.raises(ParameterError):
        parse_map_expression("catalog:f1(alpha=1.5)", 3)
    with pytest.raises(ParameterError):
        parse_map_expression("catalog:nope", 3)


def test_catalog_parameter_syntax_errors():
    """key=value 형식과 숫자 값"""
    with pytest.raises(ParseError):
        parse_map_expression("catalog:f1(alpha)", 3)
    with pytest.raises(ParseError) as excinfo:
        parse_map_expression("catalog:f1(alpha=half)", 3)
    assert excinfo.value.position is not None
    with pytest.raises(ParseError):
        parse_map_expression("catalog f1", 3)


def test_coordinate_identity_expression():
    """x1, x2, x3 → 항등 사상 (차분 야코비 ≈ I)"""
    mapping = parse_map_expression("x1, x2, x3", 3)
    assert not mapping.has_analytic_jacobian
    x = np.array([[0.1, 0.2, 0.3], [0.5, -0.1, 0.2]])
    np.testing.assert_allclose(evaluate(mapping, x), x, atol=1e-15)
    np.testing.assert_allclose(jacobian(mapping, x), np.broadcast_to(np.eye(3), (2, 3, 3)), atol=1e-9)


def test_expression_with_functions_and_norm():
    """|x|, exp, log, pow, sin, cos, pi, ^"""
    mapping = parse_map_expression("x1*exp(1 - 1/|x|), x2*exp(1 - 1/|x|)", 2)
    x = np.array([0.5, 0.0])
    np.testing.assert_allclose(evaluate(mapping, x), [0.5 * np.exp(-1.0), 0.0], rtol=1e-14)

    mapping = parse_map_expression("x1^2 + pow(x2, 2), sin(pi*x1) + cos(x2) + log(|x|)", 2)
    x = np.array([0.3, 0.4])
    expected = [0.09 + 0.16, np.sin(np.pi * 0.3) + np.cos(0.4) + np.log(0.5)]
    np.testing.assert_allclose(evaluate(mapping, x), expected, rtol=1e-14)


def test_constant_component_broadcasts():
    """상수 좌표식도 점 배열 모양으로 확장"""
    mapping = parse_map_expression("x1, 0.5", 2)
    values = evaluate(mapping, np.array([[0.1, 0.2], [0.3, 0.1]]))
    np.testing.assert_allclose(values, [[0.1, 0.5], [0.3, 0.5]])


def test_arity_mismatch():
    """좌표 수 ≠ n"""
    with pytest.raises(ParseError):
        parse_map_expression("x1, x2", 3)
    with pytest.raises(ParseError):
        parse_map_expression("pow(x1, 2), x2, x3, x1", 3)


def test_unknown_name_reports_position():
    """알 수 없는 이름의 위치"""
    with pytest.raises(ParseError) as excinfo:
        parse_map_expression("x1 + y, x2", 2)
    assert excinfo.value.position == 5
    assert excinfo.value.to_dict()["position"] == 5


def test_variable_out_of_range():
    """n=2 에서 x3"""
    with pytest.raises(ParseError) as excinfo:
        parse_map_expression("x1, x3", 2)
    assert excinfo.value.position == 4


def test_invalid_syntax():
    """괄호 불일치, 허용되지 않는 문자, 빈 식"""
    with pytest.raises(ParseError):
        parse_map_expression("(x1, x2", 2)
    with pytest.raises(ParseError):
        parse_map_expression("x1), x2", 2)
    with pytest.raises(ParseError):
        parse_map_expression("x1 # x2, x2", 2)
    with pytest.raises(ParseError):
        parse_map_expression("x1, ", 2)
    with pytest.raises(ParseError):
        parse_map_expression("", 2)
    with pytest.raises(ParseError):
        parse_map_expression("|x1|, x2", 2)
    with pytest.raises(ParseError):
        parse_map_expression("x1 * * x2, x2", 2)


def test_dunder_names_are_rejected():
    """허용 목록 밖의 이름은 평가 전에 거부"""
    with pytest.raises(ParseError):
        parse_map_expression("__import__, x2", 2)
    with pytest.raises(ParseError):
        parse_map_expression("x1.real, x2", 2)


def test_pow_with_two_arguments():
    """괄호 안의 쉼표는 함수 인자 구분자"""
    mapping = parse_map_expression("pow(x1, 2), x2", 2)
    np.testing.assert_allclose(evaluate(mapping, [0.3, 0.4]), [0.09, 0.4], rtol=1e-14)

    mapping = parse_map_expression("x1*pow(|x|, 0.5), x2*pow(|x|, 0.5), x3", 3)
    x = np.array([0.0, 0.6, 0.8 * 0.5])
    scale = np.linalg.norm(x) ** 0.5
    np.testing.assert_allclose(evaluate(mapping, x), [0.0, 0.6 * scale, 0.4], rtol=1e-14)


def test_spaced_operators_are_rejected():
    """공백으로 떨어진 연산자 두 개 (x1 * * x2) 는 거듭제곱이 아니라 구문 오류"""
    with pytest.raises(ParseError) as excinfo:
        parse_map_expression("x1 * * x2, x2", 2)
    assert excinfo.value.position == 5
    with pytest.raises(ParseError):
        parse_map_expression("x1, x2 / ^ 2", 2)

    mapping = parse_map_expression("x1 * -x2, x1 ** 2", 2)
    np.testing.assert_allclose(evaluate(mapping, [0.3, 0.4]), [-0.12, 0.09], rtol=1e-14)
