"""Shared grids for the test suite."""

import pytest

from tgd import Params

# 19 x 21 parameter grid: q in 0.05..0.95 step 0.05, alpha in -1..1 step 0.1
GRID_Q = [round(0.05 * i, 2) for i in range(1, 20)]
GRID_ALPHA = [round(-1.0 + 0.1 * j, 1) for j in range(21)]


def full_grid() -> list[Params]:
    return [Params(q, a) for q in GRID_Q for a in GRID_ALPHA]


def coarse_grid() -> list[Params]:
    qs = (0.1, 0.3, 0.5, 0.7, 0.9)
    alphas = (-1.0, -0.5, 0.0, 0.5, 1.0)
    return [Params(q, a) for q in qs for a in alphas]


@pytest.fixture(scope="session")
def grid() -> list[Params]:
    return full_grid()


@pytest.fixture(scope="session")
def small_grid() -> list[Params]:
    return coarse_grid()
