from __future__ import annotations

import pytest

from embedprob.environment import EnvironmentSpec, build_env
from embedprob.shapes import PrimePower


@pytest.fixture
def env_p3():
    """p=3, n=1, i_kf=-inf, one trivial block and one free block."""
    return build_env(EnvironmentSpec(PrimePower(3, 1), None, (1, 1)))


@pytest.fixture
def env_p2_ambient():
    """Non-strict p=2, n=1 environment: chi plus one free block, deltas (3, 1)."""
    return build_env(EnvironmentSpec(PrimePower(2, 1), None, (1, 1), strict=False))


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Collects one verdict line per acceptance criterion for the terminal summary."""

    def add(line: str) -> None:
        print(line)
        _ACCEPTANCE_LINES.append(line)

    return add


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
