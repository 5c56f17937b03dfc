from __future__ import annotations

import numpy as np
import pytest

from rotwave import Grid, ModelParams, solve

REFERENCE_SPEEDS = (0.1, 0.3, 0.5, 0.7, 0.9)


@pytest.fixture(scope="session")
def wave_grid():
    return Grid(128.0, 4096)


@pytest.fixture(scope="session")
def kdv_grid():
    return Grid(100.0, 2048)


@pytest.fixture(scope="session")
def rmb_params():
    return ModelParams(alpha=0.0, beta=1.0, gamma=1.0, delta=1.0)


@pytest.fixture(scope="session")
def kdv_params():
    return ModelParams(alpha=0.0, beta=0.0, gamma=0.0, delta=1.0)


@pytest.fixture(scope="session")
def reference_solutions(wave_grid, rmb_params):
    """Converged profiles for the five reference speeds, keyed by speed."""
    return {c: solve(rmb_params, c, wave_grid) for c in REFERENCE_SPEEDS}


def kdv_soliton(x, c=-1.0, delta=1.0):
    """Exact solution of c phi + delta phi'' = phi^2 / 2 for c < 0."""
    return 3 * c / np.cosh(0.5 * np.sqrt(-c / delta) * x) ** 2


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def random_field(rng, grid, n_modes=12, zero_mean=True):
    """Smooth random trigonometric field on ``grid``."""
    u = np.zeros(grid.N)
    for j in range(1, n_modes + 1):
        k = np.pi * j / grid.L
        a, b = rng.normal(size=2) / j
        u += a * np.cos(k * grid.x) + b * np.sin(k * grid.x)
    if not zero_mean:
        u += rng.normal()
    return u


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[n])
