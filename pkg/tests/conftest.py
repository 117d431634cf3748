from fractions import Fraction

import pytest
from hypothesis import settings

from hilbadhm import AdhmDatum, Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def jordan():
    """B_0 nilpotent 2x2 block, B_1 = 0, I = e_1; the datum of <x0^2, x1>."""
    return AdhmDatum((Matrix([[0, 0], [1, 0]]), Matrix.zeros(2, 2)), Matrix.column([1, 0]))


@pytest.fixture
def diag_points():
    """Points (0,0) and (1,0) with I = (1, 1)."""
    return AdhmDatum((Matrix.diag([0, 1]), Matrix.zeros(2, 2)), Matrix.column([1, 1]))


@pytest.fixture
def zero_unstable():
    return AdhmDatum((Matrix.zeros(2, 2), Matrix.zeros(2, 2)), Matrix.column([1, 0]))


def F(*args):
    return Fraction(*args)


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
