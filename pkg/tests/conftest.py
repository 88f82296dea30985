from __future__ import annotations

from pathlib import Path

import pytest

from kssdomain import fixtures

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# (criterion, passed, detail) rows filled in by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[str, bool, str]] = []


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def models():
    return {name: make() for name, make in fixtures.ALL.items()}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
