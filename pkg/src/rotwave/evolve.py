"""Time integration of the model in Fourier variables.

With ``u_hat`` the DFT of ``u`` the equation reads

    d u_hat/dt = -i m(kappa) u_hat - i kappa f(u)_hat.

The linear part is integrated exactly (``S(t)`` multiplies by
``exp(-i m t)``); the full equation uses the integrating-factor form of the
classical four-stage Runge-Kutta method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import spectral
from .invariants import InvariantSet, invariant_set
from .model import ModelParams, linear_dispersion_m, nonlinearity_f
from .spectral import Grid


class StepFailure(RuntimeError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, message, step=None, time=None, trajectory=None):
        super().__init__(message)
        self.step = step
        self.time = time
        self.trajectory = trajectory


@dataclass(frozen=True)
class EvolutionConfig:
    dt: float
    T: float
    record_every: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be > 0, got {self.dt!r}")
        if not self.T >= 0:
            raise ValueError(f"T must be >= 0, got {self.T!r}")
        if self.T > 0 and self.dt > self.T:
            raise ValueError(f"dt = {self.dt} exceeds T = {self.T}")
        if int(self.record_every) != self.record_every or self.record_every < 1:
            raise ValueError("record_every must be an integer >= 1")

    @property
    def n_steps(self) -> int:
        if self.T == 0:
            return 0
        return max(1, math.ceil(self.T / self.dt - 1e-9))

    @property
    def step_size(self) -> float:
        """dt adjusted so that an integer number of steps lands on T."""
        n = self.n_steps
        return self.T / n if n else self.dt


@dataclass
class Trajectory:
    grid: Grid
    times: list = field(default_factory=list)
    snapshots: list = field(default_factory=list)
    invariant_series: list = field(default_factory=list)

    def append(self, t, u, inv: InvariantSet):
        self.times.append(float(t))
        self.snapshots.append(np.array(u, dtype=float))
        self.invariant_series.append(inv)

    @property
    def final(self) -> np.ndarray:
        return self.snapshots[-1]


def default_dt(grid: Grid, params: ModelParams, c: float = 0.0) -> float:
    return 0.1 * grid.h / max(1.0, abs(c - params.alpha))


def _rsymbols(grid: Grid, params: ModelParams):
    k = np.fft.rfftfreq(grid.N, d=grid.h) * 2 * np.pi
    m = linear_dispersion_m(params, k)
    nyq = np.zeros(k.shape, dtype=bool)
    nyq[-1] = True
    return k, m, nyq


def _check_mass(grid: Grid, u, params: ModelParams):
    if params.gamma > 0:
        spectral.check_zero_mass(grid, u)
    return u


def linear_propagate(grid: Grid, u, params: ModelParams, t: float) -> np.ndarray:
    """Exact solution operator S(t) of the linearized equation.

    The Nyquist mode has no well-defined real evolution and is left unchanged.
    """
    u = _check_mass(grid, grid.check(u), params)
    k, m, nyq = _rsymbols(grid, params)
    factor = np.exp(-1j * m * t)
    factor[nyq] = 1.0
    return np.fft.irfft(np.fft.rfft(u) * factor, n=grid.N)


class _Stepper:
    """Precomputed integrating-factor RK4 step for one (grid, params, dt)."""

    def __init__(self, grid: Grid, params: ModelParams, dt: float, dealias: bool = True):
        self.grid, self.params, self.dt = grid, params, dt
        k, m, nyq = _rsymbols(grid, params)
        self.half = np.exp(-0.5j * m * dt)
        self.half[nyq] = 1.0
        self.full = self.half * self.half
        self.deriv = -1j * k
        self.deriv[nyq] = 0.0
        if dealias:
            j = np.arange(k.size)
            self.deriv[j > grid.N / 3] = 0.0

    def nonlinear(self, uh):
        u = np.fft.irfft(uh, n=self.grid.N)
        return self.deriv * np.fft.rfft(nonlinearity_f(self.params, u))

    def __call__(self, uh):
        dt, E, E2 = self.dt, self.half, self.full
        a = self.nonlinear(uh)
        b = self.nonlinear(E * (uh + 0.5 * dt * a))
        c = self.nonlinear(E * uh + 0.5 * dt * b)
        d = self.nonlinear(E2 * uh + dt * E * c)
        return E2 * uh + dt / 6.0 * (E2 * a + 2.0 * E * (b + c) + d)


def nonlinear_step(grid: Grid, u, params: ModelParams, dt: float, dealias: bool = True) -> np.ndarray:
    """Advance the full equation by one integrating-factor RK4 step."""
    u = _check_mass(grid, grid.check(u), params)
    with np.errstate(over="ignore", invalid="ignore"):
        uh = _Stepper(grid, params, dt, dealias)(np.fft.rfft(u))
    out = np.fft.irfft(uh, n=grid.N)
    if not np.all(np.isfinite(out)):
        raise StepFailure("non-finite values after one step (time step too large?)", step=1, time=dt)
    return out


def evolve(grid: Grid, initial, params: ModelParams, config: EvolutionConfig,
           dealias: bool = True, project_zero_mass: bool = True) -> Trajectory:
    """Integrate from ``initial`` to ``config.T``, recording every ``record_every`` steps.

    With gamma > 0 the initial mean is removed once (``project_zero_mass``);
    the mean mode is then constant in time.  A failure raises
    :class:`StepFailure` carrying the step index and the partial trajectory.
    """
    u0 = grid.check(initial)
    if params.gamma > 0:
        if project_zero_mass:
            u0 = spectral.project_zero_mass(u0)
        spectral.check_zero_mass(grid, u0)
    traj = Trajectory(grid)
    traj.append(0.0, u0, invariant_set(grid, u0, params))
    n, dt = config.n_steps, config.step_size
    if n == 0:
        return traj
    step = _Stepper(grid, params, dt, dealias)
    uh = np.fft.rfft(u0)
    with np.errstate(over="ignore", invalid="ignore"):
        for i in range(1, n + 1):
            uh = step(uh)
            if not np.all(np.isfinite(uh)):
                raise StepFailure(f"non-finite values at step {i} (t = {i * dt:.6g})",
                                  step=i, time=i * dt, trajectory=traj)
            if i % config.record_every == 0 or i == n:
                u = np.fft.irfft(uh, n=grid.N)
                traj.append(i * dt, u, invariant_set(grid, u, params))
    return traj


def peak_position(grid: Grid, u) -> tuple[float, float]:
    """Location and value of the largest-|u| extremum, refined by a parabola."""
    u = np.asarray(u, dtype=float)
    j = int(np.argmax(np.abs(u)))
    um, u0, up = u[j - 1], u[j], u[(j + 1) % grid.N]
    denom = um - 2 * u0 + up
    s = 0.5 * (um - up) / denom if denom != 0 else 0.0
    s = float(np.clip(s, -0.5, 0.5))
    value = u0 - 0.25 * (um - up) * s
    return float(grid.x[j] + s * grid.h), float(value)


def peak_track(grid: Grid, snapshots) -> np.ndarray:
    """Peak positions of a sequence of snapshots, unwrapped across the period."""
    xs = np.array([peak_position(grid, u)[0] for u in snapshots])
    period = 2 * grid.L
    return np.unwrap(xs, period=period) if xs.size else xs
