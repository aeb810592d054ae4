import numpy as np
import pytest

from weylbenedicks.heisenberg import GridSpec


@pytest.fixture
def grid():
    """(L, M, a) = (4, 8, 2), d = 32."""
    return GridSpec(M=8, L=4, a=2)


@pytest.fixture
def grid4():
    """(L, M, a) = (4, 16, 4), d = 64."""
    return GridSpec(M=16, L=4, a=4)


@pytest.fixture
def tiny():
    """(L, M, a) = (2, 4, 2), d = 8."""
    return GridSpec(M=4, L=2, a=2)


@pytest.fixture
def rng():
    return np.random.default_rng(20181608)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
