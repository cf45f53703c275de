"""
사상 표현식 파서

두 가지 형식을 받습니다.
- catalog:NAME(param=value, ...)    카탈로그 사상 (해석적 야코비)
- 좌표별 식 "e1, e2, ..., en"       x1..xn, |x|, exp, log, pow, sin, cos (차분 야코비)
"""

import re
from typing import Dict, List, Tuple
import logging

import numpy as np
import sympy as sp

from core.errors import ParseError
from mapping.catalog import catalog_get
from mapping.mapping_spec import MappingSpec

logger = logging.getLogger(__name__)

CATALOG_PATTERN = re.compile(r"^\s*catalog\s*:\s*([A-Za-z_]\w*)\s*(?:\((.*)\))?\s*$", re.DOTALL)
IDENTIFIER_PATTERN = re.compile(r"[A-Za-z_]\w*")
NUMBER_PATTERN = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
ALLOWED_FUNCTIONS = {"exp": sp.exp, "log": sp.log, "pow": sp.Pow, "sin": sp.sin, "cos": sp.cos}
ALLOWED_CONSTANTS = {"pi": sp.pi}
ALLOWED_CHARACTERS = set("0123456789.+-*/^(), \t\n")
SPACED_OPERATORS = re.compile(r"[*/^+-]\s+[*/^]")
NORM_SYMBOL = "_norm_x"


def _parse_catalog(match: re.Match, n: int) -> MappingSpec:
    name = match.group(1)
    params: Dict[str, float] = {}
    body = match.group(2)
    if body is not None and body.strip():
        offset = match.start(2)
        for piece in body.split(","):
            position = offset + len(piece) - len(piece.lstrip())
            offset += len(piece) + 1
            if "=" not in piece:
                raise ParseError(f"expected key=value in catalog parameters, got '{piece.strip()}'", position)
            key, value = (part.strip() for part in piece.split("=", 1))
            if not IDENTIFIER_PATTERN.fullmatch(key):
                raise ParseError(f"invalid parameter name '{key}'", position)
            if not NUMBER_PATTERN.match(value):
                raise ParseError(f"parameter '{key}' needs a numeric value, got '{value}'",
                                 position + piece.strip().index("=") + 1)
            params[key] = float(value)
    return catalog_get(name, n, params)


def _split_components(text: str) -> List[Tuple[int, str]]:
    """최상위 쉼표로 분리 - (시작 위치, 조각)"""
    pieces, depth, start = [], 0, 0
    for index, char in enumerate(text):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", index)
        elif char == "," and depth == 0:
            pieces.append((start, text[start:index]))
            start = index + 1
    if depth != 0:
        raise ParseError("unbalanced '('", len(text))
    pieces.append((start, text[start:]))
    return pieces


def _validate_component(piece: str, offset: int, n: int) -> str:
    """허용된 토큰만 있는지 검사하고 sympy 입력으로 변환"""
    if not piece.strip():
        raise ParseError("empty coordinate expression", offset)
    source = piece.replace("|x|", f" {NORM_SYMBOL} ")
    spaced = SPACED_OPERATORS.search(piece)
    if spaced:
        raise ParseError("operator follows another operator", offset + spaced.end() - 1)
    cursor = 0
    while cursor < len(piece):
        char = piece[cursor]
        if piece.startswith("|x|", cursor):
            cursor += 3
            continue
        if char.isalpha() or char == "_":
            identifier = IDENTIFIER_PATTERN.match(piece, cursor).group(0)
            variable = re.fullmatch(r"x(\d+)", identifier)
            if variable:
                index = int(variable.group(1))
                if not 1 <= index <= n:
                    raise ParseError(f"variable '{identifier}' is not available for n={n}", offset + cursor)
            elif identifier not in ALLOWED_FUNCTIONS and identifier not in ALLOWED_CONSTANTS:
                raise ParseError(f"unknown name '{identifier}'", offset + cursor)
            cursor += len(identifier)
            continue
        if char == "|":
            raise ParseError("only |x| is supported for absolute values", offset + cursor)
        if char not in ALLOWED_CHARACTERS:
            raise ParseError(f"unexpected character '{char}'", offset + cursor)
        cursor += 1
    return source.replace("^", "**")


def parse_map_expression(text: str, n: int) -> MappingSpec:
    """
    사상 표현식을 MappingSpec 으로 변환

    Args:
        text: catalog:NAME(...) 또는 쉼표로 구분된 n 개 좌표식
        n: 차원

    Returns:
        MappingSpec: 카탈로그 사상 또는 차분 야코비 사상

    Raises:
        ParseError: 구문 오류 (위치 포함) 또는 좌표 수 불일치
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("empty map expression", 0)
    match = CATALOG_PATTERN.match(text)
    if match:
        return _parse_catalog(match, n)
    if text.strip().startswith("catalog"):
        raise ParseError("catalog maps are written catalog:NAME(key=value, ...)", 0)

    components = _split_components(text)
    if len(components) != n:
        raise ParseError(f"expression has {len(components)} coordinate(s) but n={n}", len(text))

    symbols = sp.symbols([f"x{i}" for i in range(1, n + 1)] + [NORM_SYMBOL])
    locals_map = {str(symbol): symbol for symbol in symbols}
    locals_map.update(ALLOWED_FUNCTIONS)
    locals_map.update(ALLOWED_CONSTANTS)

    expressions = []
    for offset, piece in components:
        source = _validate_component(piece, offset, n)
        try:
            expressions.append(sp.sympify(source, locals=locals_map))
        except (sp.SympifyError, SyntaxError, TypeError) as e:
            position = offset + max(0, (getattr(e, "offset", None) or 1) - 1)
            raise ParseError(f"cannot parse '{piece.strip()}'", min(position, offset + len(piece))) from e

    functions = [sp.lambdify(symbols, expression, "numpy") for expression in expressions]

    def evaluate_rule(x: np.ndarray) -> np.ndarray:
        arguments = [x[..., i] for i in range(n)] + [np.linalg.norm(x, axis=-1)]
        shape = x.shape[:-1]
        return np.stack([np.broadcast_to(np.asarray(f(*arguments), dtype=float), shape) for f in functions],
                        axis=-1)

    logger.warning(f"expression map '{text.strip()}' uses finite-difference Jacobians (accuracy floor ~1e-6)")
    return MappingSpec(dimension=n, evaluate_rule=evaluate_rule, label=text.strip(),
                       params={"expression": text.strip()})
