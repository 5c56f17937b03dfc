from __future__ import annotations

import os

import numpy as np
import pytest

from rotwave import analysis
from rotwave.analysis import (ExistenceCase, FitInfeasibleError, UnsupportedRegimeError,
                              beta_sweep, c_star, classify_existence, compare_ostrovsky,
                              count_deep_minima, discriminants, extremum_radii, phase_portrait,
                              speed_sweep, tail_decay_fit, z_plus)
from rotwave.model import ModelParams
from rotwave.petviashvili import WaveProfile, solve
from rotwave.spectral import Grid

from conftest import REFERENCE_SPEEDS, kdv_soliton


def test_case_one():
    v = classify_existence(ModelParams(beta=-1.0), -0.5)
    assert v.admissible and v.matched_case is ExistenceCase.I
    assert v.resonance_free


def test_case_two_uses_c_star():
    params = ModelParams(beta=-1.0, gamma=1.0, delta=1.0)
    assert classify_existence(params, 1.9).matched_case is ExistenceCase.II
    assert not classify_existence(params, 2.1).admissible


def test_case_three():
    params = ModelParams(beta=2.0)
    assert classify_existence(params, -1.0).matched_case is ExistenceCase.III
    assert classify_existence(params, -0.9).matched_case is not ExistenceCase.III


def test_case_four():
    v = classify_existence(ModelParams(beta=1.0), 0.5)
    assert v.matched_case is ExistenceCase.IV
    assert v.z_plus == pytest.approx(0.9212, abs=1e-4)
    assert (v.A, v.B) == (3.0, -8.0)
    assert not classify_existence(ModelParams(beta=1.0), 2.0).admissible


def test_z_plus_limit():
    assert abs(z_plus(1e-6, 1.0, 1.0) - 2.0) <= 1e-5
    assert c_star(1.0, 1.0) == 2.0
    assert c_star(4.0, 0.25) == 2.0


def test_unsupported_regime():
    with pytest.raises(UnsupportedRegimeError):
        classify_existence(ModelParams(delta=0.0), 1.0)
    with pytest.raises(UnsupportedRegimeError):
        classify_existence(ModelParams(gamma=0.0), 1.0)


def test_discriminant_sign_patterns():
    A, B = discriminants(ModelParams(alpha=0.5, beta=2.0, gamma=0.5, delta=1.0))
    assert (A, B) == (2.0, 6.0)
    A, B = discriminants(ModelParams(alpha=0.5, beta=1.0, gamma=0.5, delta=1.0))
    assert (A, B) == (3.0, -3.5)


def test_verdict_dict_is_plain():
    d = classify_existence(ModelParams(beta=1.0), 0.5).as_dict()
    assert d["matched_case"] == "IV"


def test_speed_sweep_monotone(reference_solutions, wave_grid, rmb_params):
    result = speed_sweep(rmb_params, list(reversed(REFERENCE_SPEEDS)), wave_grid)
    assert [r.param for r in result.rows] == list(REFERENCE_SPEEDS)
    assert all(r.converged for r in result.rows)
    umax = [r.u_max for r in result.rows]
    umin = [r.u_min for r in result.rows]
    assert all(np.diff(umax) < 0) and all(np.diff(umin) > 0)
    for row in result.rows:
        prof, _ = reference_solutions[row.param]
        assert row.u_min == prof.u_min


def test_speed_sweep_beyond_bound(wave_grid, rmb_params):
    result = speed_sweep(rmb_params, [1.2, 1.5, 2.0], wave_grid)
    assert not result.converged_rows()


def test_single_speed_matches_direct_solve(reference_solutions, wave_grid, rmb_params):
    result = speed_sweep(rmb_params, [0.7], wave_grid)
    assert len(result.rows) == 1
    np.testing.assert_array_equal(result.profiles[0].values, reference_solutions[0.7][0].values)


def test_sweep_respects_thread_cap(monkeypatch, wave_grid, rmb_params):
    monkeypatch.setenv("ROTWAVE_THREADS", "1")
    assert analysis._max_workers(8) == 1
    monkeypatch.setenv("ROTWAVE_THREADS", "3")
    assert analysis._max_workers(8) == 3
    assert analysis._max_workers(2) == 2


def test_warm_start_matches_cold(wave_grid, rmb_params):
    cold = speed_sweep(rmb_params, [0.5, 0.6], wave_grid)
    warm = speed_sweep(rmb_params, [0.5, 0.6], wave_grid, warm_start=True)
    for a, b in zip(cold.rows, warm.rows):
        assert b.converged
        assert a.u_min == pytest.approx(b.u_min, rel=1e-8)


def test_beta_sweep(wave_grid, rmb_params):
    result = beta_sweep(rmb_params, [1.0, 0.0, 0.5], 0.5, wave_grid)
    assert [r.param for r in result.rows] == [0.0, 0.5, 1.0]
    assert all(np.diff([r.u_max for r in result.rows]) < 0)
    assert all(np.diff([r.u_min for r in result.rows]) > 0)
    ost, _ = solve(rmb_params.replace(beta=0.0), 0.5, wave_grid)
    assert result.rows[0].u_min == ost.u_min


def test_compare_ostrovsky(wave_grid, rmb_params):
    _, _, rec = compare_ostrovsky(rmb_params, 0.1, wave_grid)
    assert rec.converged and rec.converged_ostrovsky
    assert rec.u_max_ostrovsky >= rec.u_max
    assert rec.u_min_ostrovsky <= rec.u_min
    with pytest.raises(ValueError):
        compare_ostrovsky(rmb_params.replace(beta=0.0), 0.1, wave_grid)


def test_tail_fit_on_synthetic_power_law():
    grid = Grid(400.0, 16384)
    x = grid.x
    u = np.cos(x) * (1 + x * x) ** -1.5
    prof = WaveProfile(grid, u, ModelParams(), 0.5, 0.0)
    fit = tail_decay_fit(prof, window=(10.0, 200.0))
    assert fit.exponent == pytest.approx(3.0, abs=0.05)
    assert fit.goodness > 0.99


def test_tail_fit_on_solved_profile(reference_solutions):
    fit = tail_decay_fit(reference_solutions[0.5][0])
    assert 0 < fit.exponent < np.inf
    assert fit.goodness >= 0.9


def test_tail_fit_on_exponential_tail(kdv_grid, kdv_params):
    prof = WaveProfile(kdv_grid, kdv_soliton(kdv_grid.x), kdv_params, -1.0, 0.0)
    try:
        fit = tail_decay_fit(prof)
    except FitInfeasibleError:
        return
    # an exponential tail is not a power law: a large exponent or a poor fit
    assert fit.exponent > 10 or fit.goodness < 0.9


def test_tail_fit_rejects_bad_window(reference_solutions):
    with pytest.raises(FitInfeasibleError):
        tail_decay_fit(reference_solutions[0.5][0], window=(50.0, 10.0))


def test_phase_portrait():
    grid = Grid(8.0, 128)
    zero = WaveProfile(grid, np.zeros(grid.N), ModelParams(), 1.0, 0.0)
    assert np.all(phase_portrait(zero) == 0)
    u = np.cos(np.pi * grid.x / grid.L)
    pp = phase_portrait(WaveProfile(grid, u, ModelParams(), 1.0, 0.0))
    assert pp.shape == (grid.N, 2)
    ellipse = pp[:, 0] ** 2 + (grid.L * pp[:, 1] / np.pi) ** 2
    assert np.max(np.abs(ellipse - 1)) <= 1e-10


def test_phase_portrait_spirals_inward(reference_solutions):
    prof = reference_solutions[0.5][0]
    for side in (1, -1):
        radii = extremum_radii(prof, side)[:10]
        assert radii.size == 10
        assert np.all(np.diff(radii) < 0)


def test_count_deep_minima():
    x = np.linspace(-20, 20, 801)
    one = -1 / np.cosh(x) ** 2
    two = -1 / np.cosh(x - 5) ** 2 - 1 / np.cosh(x + 5) ** 2
    assert count_deep_minima(one) == 1
    assert count_deep_minima(two) == 2


def test_threads_env_default(monkeypatch):
    monkeypatch.delenv("ROTWAVE_THREADS", raising=False)
    assert analysis._max_workers(10 ** 6) == (os.cpu_count() or 1)
