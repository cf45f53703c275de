import os
from dotenv import load_dotenv

load_dotenv()

TOOL_NAME = "cavimod"
TOOL_VERSION = "0.4.1"


def _env_int(key: str, default: int) -> int:
    return int(os.getenv(f"CAVIMOD_{key}", str(default)))


def _env_float(key: str, default: float) -> float:
    return float(os.getenv(f"CAVIMOD_{key}", repr(default)))


# 적분 격자 설정 - n=3 기본값은 약 2·10³개 구면 노드
QUADRATURE_CONFIG = {
    "sphere_level": _env_int("SPHERE_LEVEL", 3),
    "radial_nodes": _env_int("RADIAL_NODES", 2048),
    "k_min": _env_int("K_MIN", 3),
    "k_max": _env_int("K_MAX", 16),
    "seed": _env_int("SEED", 0),
    "irregular_tolerance": _env_float("IRREGULAR_TOLERANCE", 1e-3),
    "monte_carlo_nodes": _env_int("MONTE_CARLO_NODES", 4096),
    "boundary_inset": _env_float("BOUNDARY_INSET", 1e-9),
}

# ε→0 극한 분류기 설정
CLASSIFIER_CONFIG = {
    "contraction": _env_float("CONTRACTION", 0.75),
    "window": _env_int("WINDOW", 6),
    "slope_tolerance": _env_float("SLOPE_TOLERANCE", 0.05),
    "zero_tolerance": _env_float("ZERO_TOLERANCE", 1e-9),
    "positivity_factor": _env_float("POSITIVITY_FACTOR", 1e-6),
}

# 정칙점 판정 및 쌍대 팽창 탐색 설정
DILATATION_CONFIG = {
    "det_floor": _env_float("DET_FLOOR", 1e-300),
    "condition_ceiling": _env_float("CONDITION_CEILING", 1e12),
    "dual_restarts": _env_int("DUAL_RESTARTS", 8),
    "dual_seed_level": _env_int("DUAL_SEED_LEVEL", 2),
    "chain_slack": _env_float("CHAIN_SLACK", 1e-9),
}

MAPPING_CONFIG = {
    "orthogonality_tolerance": _env_float("ORTHOGONALITY_TOLERANCE", 1e-12),
}

CLI_CONFIG = {
    "csv_digits": _env_int("CSV_DIGITS", 17),
    "default_format": os.getenv("CAVIMOD_DEFAULT_FORMAT", "json"),
}


def resolve_worker_count(requested: int = 0) -> int:
    """
    워커 수 결정 - CAVIMOD_THREADS가 상한

    Args:
        requested: 호출자가 요청한 워커 수 (0이면 CPU 수)

    Returns:
        int: 실제 사용할 워커 수 (최소 1)
    """
    available = os.cpu_count() or 1
    count = requested if requested > 0 else available
    cap = os.getenv("CAVIMOD_THREADS")
    if cap:
        count = min(count, max(1, int(cap)))
    return max(1, count)
