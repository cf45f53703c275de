#!/usr/bin/env python3
"""
cavimod - Main Entry Point
천공 단위 구 사상의 팽창 계수, 링 모듈러스 상하한, 공동화 판정
"""

import logging
import sys

from cli.runner import run


def main() -> int:
    """메인 함수"""
    verbose = "--verbose" in sys.argv[1:] or "-v" in sys.argv[1:]
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
    )
    try:
        return run(sys.argv[1:])
    except KeyboardInterrupt:
        print("\n👋 사용자가 계산을 중단했습니다.", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
