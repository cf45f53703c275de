"""
cavimod 예외 계층

모든 실패는 CavimodError를 상속하며, 리포트에 직렬화될 때는
{"error_type": ..., "error_message": ...} 형태를 사용합니다.
"""

from typing import Any, Dict, Optional


class CavimodError(Exception):
    """cavimod 공통 예외"""

    exit_code = 1

    def to_dict(self) -> Dict[str, Any]:
        """예외를 딕셔너리로 변환"""
        return {
            "error_type": type(self).__name__,
            "error_message": str(self),
        }


class DomainError(CavimodError, ValueError):
    """점이 천공 단위 구 0 < |x| < 1 밖에 있거나 구간이 잘못된 경우"""

    exit_code = 2


class EvaluationError(CavimodError, ArithmeticError):
    """사상 값 또는 야코비 행렬이 유한하지 않은 경우"""


class IrregularPointError(CavimodError, ValueError):
    """정칙점이 필요한 곳에서 det J ≤ 0 이거나 조건수가 너무 큰 경우"""


class IntegrationError(CavimodError):
    """비정칙 노드 비율이 허용치를 넘은 경우"""

    def __init__(self, message: str, fraction: float):
        super().__init__(message)
        self.fraction = fraction

    def to_dict(self) -> Dict[str, Any]:
        payload = super().to_dict()
        payload["irregular_fraction"] = self.fraction
        return payload


class AdmissibilityError(CavimodError, ValueError):
    """밀도 쌍이 정규화 조건을 만족하지 않는 경우"""

    exit_code = 2

    def __init__(self, message: str, rho_residual: float, p_residual: float):
        super().__init__(message)
        self.rho_residual = rho_residual
        self.p_residual = p_residual

    def to_dict(self) -> Dict[str, Any]:
        payload = super().to_dict()
        payload["rho_residual"] = self.rho_residual
        payload["p_residual"] = self.p_residual
        return payload


class ParameterError(CavimodError, ValueError):
    """알 수 없는 이름, 범위를 벗어난 매개변수, 잘못된 격자 크기"""

    exit_code = 2


class ParseError(CavimodError, ValueError):
    """사상 표현식 구문 오류 (위치 포함)"""

    exit_code = 2

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (position {position})"
        super().__init__(message)
        self.position = position

    def to_dict(self) -> Dict[str, Any]:
        payload = super().to_dict()
        payload["position"] = self.position
        return payload


class ClassificationError(CavimodError, ValueError):
    """극한 분류에 필요한 ε 점이 부족한 경우"""

    exit_code = 2
