"""Shared fixtures: a recorder that surfaces acceptance lines in the summary."""

import pytest

_LINES: list[str] = []


def _record(line: str) -> None:
    _LINES.append(line)


@pytest.fixture()
def record():
    return _record


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
