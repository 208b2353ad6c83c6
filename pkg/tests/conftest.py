from __future__ import annotations

from pathlib import Path

import pytest

from twisted_toric.fileformat import parse_spec_file

FIXTURES = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES: list[str] = []


def load(name: str):
    return parse_spec_file((FIXTURES / name).read_bytes()).to_spec()


@pytest.fixture
def fixture_spec():
    return load


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
