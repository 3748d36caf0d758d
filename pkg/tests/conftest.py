from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]

HALF, ONE, THREE_HALVES, TWO, FIVE_HALVES, THREE = 1, 2, 3, 4, 5, 6


@pytest.fixture(scope="session")
def table1_path():
    return ROOT / "data" / "table1.csv"


_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: ``criterion(n, ok, detail)``."""

    def record(n: int, ok: bool, detail: str) -> bool:
        _CRITERIA[n] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:2d}: {detail}")
