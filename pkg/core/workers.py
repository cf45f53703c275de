"""
청크 단위 병렬 평가

노드 평가는 스레드 풀에서 수행하고, 결과는 항상 입력 순서대로
모아 결정적 리덕션이 가능하도록 합니다.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar
import logging

from core.config import resolve_worker_count

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def map_in_order(func: Callable[[T], R], chunks: Sequence[T], workers: int = 0) -> List[R]:
    """
    청크 목록에 함수를 적용 (순서 보존)

    Args:
        func: 청크 하나를 처리하는 순수 함수
        chunks: 처리할 청크 목록
        workers: 요청 워커 수 (0이면 자동, CAVIMOD_THREADS가 상한)

    Returns:
        List: 입력 순서와 같은 순서의 결과
    """
    count = min(resolve_worker_count(workers), max(1, len(chunks)))
    if count == 1:
        return [func(chunk) for chunk in chunks]

    logger.debug(f"{len(chunks)}개 청크를 {count}개 워커로 평가")
    with ThreadPoolExecutor(max_workers=count) as executor:
        return list(executor.map(func, chunks))
