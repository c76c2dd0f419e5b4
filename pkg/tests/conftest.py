from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from gkz_mgm import build_datum  # noqa: E402
from gkz_mgm.fixtures import FIXTURES  # noqa: E402


@pytest.fixture(scope="session")
def isoms():
    return build_datum(FIXTURES["8isoms"])


@pytest.fixture(scope="session")
def normal2():
    return build_datum(FIXTURES["111-012"])


@pytest.fixture(scope="session")
def fivecol():
    return build_datum(FIXTURES["five-col"])


@pytest.fixture(scope="session")
def zzd():
    return build_datum(FIXTURES["zzd"])


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line for an acceptance criterion; the lines are echoed in the summary."""

    def record(label: str, ok: bool, detail: str) -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
