import numpy as np
import pytest

from fdboot.core import Grid, build_sample


@pytest.fixture
def unit_grid():
    return Grid.uniform(101)


def constant_sample(levels, grid=None):
    grid = grid or Grid.uniform(101)
    return build_sample(grid, [[float(v)] * len(grid) for v in levels])


@pytest.fixture
def gp_sample():
    from fdboot.sim import GpSpec, simulate_gp
    from fdboot.rng import RngStream

    return simulate_gp(GpSpec(n=100), RngStream(20240611, 0))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
