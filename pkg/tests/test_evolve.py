from __future__ import annotations

import numpy as np
import pytest

from rotwave import spectral
from rotwave.evolve import (EvolutionConfig, StepFailure, default_dt, evolve, linear_propagate,
                            nonlinear_step, peak_position, peak_track)
from rotwave.model import ModelParams
from rotwave.spectral import Grid

from conftest import kdv_soliton, random_field

SMALL = Grid(10.0, 64)
RMB = ModelParams(alpha=0.0, beta=1.0, gamma=1.0, delta=1.0)


def richardson_ratio(dt):
    u0 = SMALL.x * np.exp(-SMALL.x ** 2 / 4)
    u0 = u0 - u0.mean()

    def run(step):
        return evolve(SMALL, u0, RMB, EvolutionConfig(dt=step, T=1.0, record_every=10 ** 6)).final

    ref = run(dt / 16)
    e1 = spectral.l2_norm(SMALL, run(dt) - ref)
    e2 = spectral.l2_norm(SMALL, run(dt / 2) - ref)
    return e1 / e2


def test_linear_propagate_identity_and_group(rng):
    u = random_field(rng, SMALL)
    np.testing.assert_allclose(linear_propagate(SMALL, u, RMB, 0.0), u, atol=1e-14)
    a = linear_propagate(SMALL, linear_propagate(SMALL, u, RMB, 0.7), RMB, 1.9)
    b = linear_propagate(SMALL, u, RMB, 2.6)
    assert np.max(np.abs(a - b)) <= 1e-10


def test_linear_propagate_is_unitary(rng):
    u = random_field(rng, SMALL)
    v = linear_propagate(SMALL, u, RMB, 13.0)
    assert spectral.l2_norm(SMALL, v) == pytest.approx(spectral.l2_norm(SMALL, u), rel=1e-12)


def test_linear_propagate_mode_phase():
    k = 3 * np.pi / SMALL.L
    u = np.cos(k * SMALL.x)
    m = RMB.gamma / k + RMB.alpha * k - RMB.beta * k * k + RMB.delta * k ** 3
    t = 0.37
    np.testing.assert_allclose(linear_propagate(SMALL, u, RMB, t), np.cos(k * SMALL.x - m * t), atol=1e-12)


def test_nonlinear_step_zero_field():
    assert np.all(nonlinear_step(SMALL, np.zeros(SMALL.N), RMB, 0.01) == 0)


def test_nonlinear_step_translates_kdv_soliton(kdv_grid, kdv_params):
    phi = kdv_soliton(kdv_grid.x)
    dt = 1e-3
    out = nonlinear_step(kdv_grid, phi, kdv_params, dt)
    expected = spectral.shift(kdv_grid, phi, -1.0 * dt)
    assert np.max(np.abs(out - expected)) <= 1e-8


def test_fourth_order_self_convergence():
    assert 14 <= richardson_ratio(0.01) <= 18


def test_step_failure_reports_step():
    grid = Grid(128.0, 4096)
    u = spectral.project_zero_mass(-3.75 / np.cosh(grid.x) ** 2)
    with pytest.raises(StepFailure) as info:
        evolve(grid, u, RMB, EvolutionConfig(dt=2.0, T=200.0, record_every=1000))
    assert info.value.step is not None and info.value.step >= 1
    assert info.value.trajectory is not None
    assert len(info.value.trajectory.times) >= 1


def test_zero_duration_gives_single_snapshot(rng):
    u = random_field(rng, SMALL)
    traj = evolve(SMALL, u, RMB, EvolutionConfig(dt=0.1, T=0.0))
    assert traj.times == [0.0]
    assert len(traj.snapshots) == 1


def test_recording_stride_and_final_time(rng):
    u = random_field(rng, SMALL)
    traj = evolve(SMALL, u, RMB, EvolutionConfig(dt=0.1, T=1.05, record_every=4))
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(1.05)
    assert len(traj.times) == 1 + 2 + 1


def test_evolution_config_validation():
    with pytest.raises(ValueError):
        EvolutionConfig(dt=0.0, T=1.0)
    with pytest.raises(ValueError):
        EvolutionConfig(dt=2.0, T=1.0)
    with pytest.raises(ValueError):
        EvolutionConfig(dt=0.1, T=-1.0)
    with pytest.raises(ValueError):
        EvolutionConfig(dt=0.1, T=1.0, record_every=0)
    assert EvolutionConfig(dt=0.3, T=1.0).step_size == pytest.approx(0.25)


def test_default_dt_scales_with_grid():
    grid = Grid(128.0, 4096)
    assert default_dt(grid, RMB, 0.5) == pytest.approx(0.1 * grid.h)
    assert default_dt(grid, RMB, 3.0) == pytest.approx(0.1 * grid.h / 3)


def test_conservation_short_run(reference_solutions):
    prof, _ = reference_solutions[0.5]
    traj = evolve(prof.grid, prof.values, prof.params, EvolutionConfig(dt=0.002, T=1.0, record_every=100))
    V = np.array([i.momentum for i in traj.invariant_series])
    E = np.array([i.energy for i in traj.invariant_series])
    M = np.array([i.mass for i in traj.invariant_series])
    assert np.max(np.abs(V - V[0])) <= 1e-9 * V[0]
    assert np.max(np.abs(E - E[0])) <= 1e-8 * abs(E[0])
    assert np.max(np.abs(M)) <= 1e-10


def test_peak_tracking_and_unwrap():
    grid = Grid(10.0, 256)
    snaps = [spectral.shift(grid, -1 / np.cosh(grid.x) ** 2, s) for s in (8.0, 9.5, 11.0, 12.5)]
    xs = peak_track(grid, snaps)
    np.testing.assert_allclose(xs, [8.0, 9.5, 11.0, 12.5], atol=2e-3)
    x0, v0 = peak_position(grid, snaps[0])
    assert v0 == pytest.approx(-1.0, abs=1e-3)
