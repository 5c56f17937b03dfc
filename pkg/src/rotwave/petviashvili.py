"""Petviashvili iteration for solitary-wave profiles.

A travelling wave ``u = phi(x - c t)`` of the model satisfies ``L phi = f(phi)``
with

    L = (c - alpha) + beta H d/dx + delta d^2/dx^2 + gamma d^{-2}/dx^{-2}.

In Fourier variables ``P(kappa) phi_hat = kappa^2 f(phi)_hat`` for
``kappa != 0``, and the iteration is

    m      = sum P |phi_hat|^2 / sum kappa^2 f(phi)_hat conj(phi_hat)
    phi'   = |m|^q kappa^2 f(phi)_hat / P,      q = p / (p - 1).
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from . import spectral
from .model import ModelParams, check_speed, nonlinearity_f, profile_symbol_P
from .spectral import Grid

log = logging.getLogger(__name__)

DIVERGENCE_RESIDUAL = 1e6


class SymbolSingularError(ArithmeticError):
    """P(kappa) vanishes (to within the floor) on some grid mode."""


class DegenerateProfileError(ArithmeticError):
    """Stabilizing-factor denominator vanishes (e.g. a zero profile)."""


class TerminationReason(str, enum.Enum):
    RESIDUAL_MET = "ResidualMet"
    STAB_FACTOR_MET = "StabFactorMet"
    MAX_ITER = "MaxIter"
    DIVERGED = "Diverged"
    SYMBOL_SINGULAR = "SymbolSingular"


# Initial guesses.  All are amplitude * shape((x - center) / width).

@dataclass(frozen=True)
class SechSquared:
    amplitude: float
    width: float
    center: float = 0.0

    def __call__(self, x):
        return self.amplitude / np.cosh((x - self.center) / self.width) ** 2


@dataclass(frozen=True)
class NegativeSech:
    """``-|amplitude| sech((x - center) / width)``."""

    amplitude: float = 1.0
    width: float = 1.0
    center: float = 0.0

    def __call__(self, x):
        return -abs(self.amplitude) / np.cosh((x - self.center) / self.width)


@dataclass(frozen=True)
class Gaussian:
    amplitude: float
    width: float
    center: float = 0.0

    def __call__(self, x):
        return self.amplitude * np.exp(-(((x - self.center) / self.width) ** 2))


@dataclass(frozen=True)
class Custom:
    values: np.ndarray
    center: float | None = None

    def __call__(self, x):
        values = np.asarray(self.values, dtype=float)
        if values.shape != np.shape(x):
            raise ValueError(f"custom guess has shape {values.shape}, grid has {np.shape(x)}")
        return values.copy()


def default_guess(params: ModelParams, c: float) -> SechSquared:
    """KdV-like seed ``-3|c - alpha| sech^2(x / w)``.

    ``w = 2 sqrt(delta / |c - alpha|)`` reproduces the exact KdV soliton.
    Without third-order dispersion the width falls back to the
    Benjamin-Ono scale ``2 |beta| / |c - alpha|``.
    """
    dc = abs(c - params.alpha)
    if dc == 0:
        return SechSquared(-1.0, 1.0)
    if params.delta > 0:
        width = 2 * np.sqrt(params.delta / dc)
    elif params.beta != 0:
        width = 2 * abs(params.beta) / dc
    else:
        width = 1.0
    return SechSquared(-3 * dc, width)


@dataclass(frozen=True)
class SolverConfig:
    """Settings for :func:`solve`.

    ``relaxation`` blends each Petviashvili update with the previous iterate
    (1.0 is the undamped method).  ``symmetrize`` replaces every iterate by its
    even part about the guess centre, which removes the odd unstable
    direction the undamped method develops near the speed limit.
    ``zero_mass_projection=None`` means "project when gamma > 0".
    """

    tol_residual: float = 1e-10
    tol_stab: float = 1e-14
    max_iter: int = 500
    initial_guess: object = None
    dealias: bool = True
    zero_mass_projection: bool | None = None
    relaxation: float = 0.8
    symmetrize: bool = True
    symbol_floor: float = 1e-12

    def __post_init__(self):
        if not self.tol_residual > 0:
            raise ValueError("tol_residual must be > 0")
        if not self.tol_stab > 0:
            raise ValueError("tol_stab must be > 0")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise ValueError("max_iter must be an integer >= 1")
        if not 0 < self.relaxation <= 1:
            raise ValueError("relaxation must lie in (0, 1]")
        if not self.symbol_floor >= 0:
            raise ValueError("symbol_floor must be >= 0")

    def replace(self, **changes) -> "SolverConfig":
        values = {name: getattr(self, name) for name in self.__dataclass_fields__}
        values.update(changes)
        return SolverConfig(**values)


@dataclass
class WaveProfile:
    grid: Grid
    values: np.ndarray
    params: ModelParams
    speed: float
    residual: float

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def u_max(self) -> float:
        return float(np.max(self.values))

    @property
    def u_min(self) -> float:
        return float(np.min(self.values))


@dataclass
class SolverReport:
    converged: bool
    iterations: int
    residual_history: list = field(default_factory=list)
    stab_factor_history: list = field(default_factory=list)
    termination_reason: TerminationReason = TerminationReason.MAX_ITER

    def as_dict(self) -> dict:
        return {
            "converged": self.converged,
            "iterations": self.iterations,
            "termination_reason": self.termination_reason.value,
            "residual_history": [float(r) for r in self.residual_history],
            "stab_factor_history": [float(m) for m in self.stab_factor_history],
        }


def stabilizing_exponent(p: int) -> float:
    return p / (p - 1)


def _hermitian_sum(a) -> float:
    # full-spectrum sums of Hermitian products are real up to round-off
    s = np.sum(a)
    if abs(s.imag) > 1e-10 * (np.sum(np.abs(a)) + 1e-300):
        raise ArithmeticError(f"non-Hermitian spectral sum (imaginary part {s.imag:.3e})")
    return float(s.real)


def _stab_factor(phi_hat, n_hat, P, k2) -> float:
    num = _hermitian_sum(P * np.abs(phi_hat) ** 2)
    den = _hermitian_sum(k2 * n_hat * np.conj(phi_hat))
    if not abs(den) > 1e-14 * (abs(num) + 1.0):
        raise DegenerateProfileError(
            f"stabilizing factor denominator vanishes ({den:.3e} vs numerator {num:.3e})")
    return num / den


def _nonlinear_hat(grid: Grid, params: ModelParams, phi, dealias: bool) -> np.ndarray:
    n_hat = np.fft.fft(nonlinearity_f(params, phi))
    if dealias:
        n_hat[~spectral.dealias_mask(grid)] = 0.0
    return n_hat


def stabilizing_factor(grid: Grid, phi, params: ModelParams, c: float,
                       dealias: bool = False) -> float:
    """Petviashvili stabilizing factor of ``phi``; equals 1 at an exact solution."""
    phi = grid.check(phi)
    k = grid.wavenumbers
    P = profile_symbol_P(params, c, k)
    return _stab_factor(np.fft.fft(phi), _nonlinear_hat(grid, params, phi, dealias), P, k * k)


def update_multiplier(grid: Grid, params: ModelParams, c: float,
                      symbol_floor: float = 1e-12) -> np.ndarray:
    """``kappa^2 / P(kappa)`` on the grid, with the zero-mode rule.

    The kappa = 0 entry is 0 when gamma > 0 (zero mass) and ``1 / (c - alpha)``
    when gamma = 0.
    """
    k = grid.wavenumbers
    P = profile_symbol_P(params, c, k)
    nz = k != 0
    bad = nz & (np.abs(P) <= symbol_floor)
    if np.any(bad):
        kb = k[bad][np.argmin(np.abs(P[bad]))]
        raise SymbolSingularError(
            f"P(kappa) vanishes near kappa = {kb:.6g}: the speed resonates with linear waves")
    mult = np.zeros(grid.N)
    mult[nz] = k[nz] ** 2 / P[nz]
    if params.gamma == 0:
        dc = c - params.alpha
        if abs(dc) <= symbol_floor:
            raise SymbolSingularError("c - alpha = 0 makes the mean mode singular when gamma = 0")
        mult[0] = 1.0 / dc
    return mult


def iterate_once(grid: Grid, phi, params: ModelParams, c: float,
                 config: SolverConfig | None = None) -> np.ndarray:
    """One undamped Petviashvili update of ``phi``."""
    config = config or SolverConfig()
    phi = grid.check(phi)
    mult = update_multiplier(grid, params, c, config.symbol_floor)
    k = grid.wavenumbers
    n_hat = _nonlinear_hat(grid, params, phi, config.dealias)
    m = _stab_factor(np.fft.fft(phi), n_hat, profile_symbol_P(params, c, k), k * k)
    q = stabilizing_exponent(params.p)
    return np.fft.ifft(abs(m) ** q * mult * n_hat).real


def linear_operator(grid: Grid, phi, params: ModelParams, c: float) -> np.ndarray:
    """Apply ``L`` term by term with the spectral operators."""
    phi = grid.check(phi)
    out = (c - params.alpha) * phi
    if params.beta:
        out += params.beta * spectral.hilbert(grid, spectral.derivative(grid, phi, 1))
    if params.delta:
        out += params.delta * spectral.derivative(grid, phi, 2)
    if params.gamma:
        inv = spectral.antiderivative(grid, phi)
        out += params.gamma * spectral.antiderivative(grid, inv - inv.mean())
    return out


def residual_field(grid: Grid, phi, params: ModelParams, c: float) -> np.ndarray:
    """``L phi - f(phi)``; with gamma > 0 the mean is removed.

    On a periodic domain ``d^{-2}`` only exists modulo constants, so for
    gamma > 0 the equation is the x-derivative of the profile equation and
    the mean of ``f(phi)`` is not part of it.
    """
    r = linear_operator(grid, phi, params, c) - nonlinearity_f(params, phi)
    if params.gamma > 0:
        r -= r.mean()
    return r


def residual(profile_or_grid, phi=None, params: ModelParams | None = None,
             c: float | None = None) -> float:
    """Discrete L2 norm of the profile-equation residual.

    Call either as ``residual(profile)`` with a :class:`WaveProfile` or as
    ``residual(grid, phi, params, c)``.
    """
    if isinstance(profile_or_grid, WaveProfile):
        prof = profile_or_grid
        grid, phi, params, c = prof.grid, prof.values, prof.params, prof.speed
    else:
        grid = profile_or_grid
    return spectral.l2_norm(grid, residual_field(grid, phi, params, c))


def _guess_center(guess, values, grid: Grid) -> float:
    center = getattr(guess, "center", None)
    if center is not None:
        return float(center)
    return float(grid.x[np.argmax(np.abs(values))])


def solve(params: ModelParams, c: float, grid: Grid,
          config: SolverConfig | None = None) -> tuple[WaveProfile, SolverReport]:
    """Run the Petviashvili iteration.

    Non-convergence is reported through ``SolverReport.converged`` rather than
    raised.  The returned profile is the last finite iterate.
    """
    config = config or SolverConfig()
    c = check_speed(c)
    guess = config.initial_guess or default_guess(params, c)
    phi = np.asarray(guess(grid.x), dtype=float)
    center = _guess_center(guess, phi, grid)
    project = config.zero_mass_projection
    if project is None:
        project = params.gamma > 0
    if project:
        phi = spectral.project_zero_mass(phi)
    report = SolverReport(converged=False, iterations=0)

    def finish(values, reason):
        report.termination_reason = reason
        report.converged = reason in (TerminationReason.RESIDUAL_MET, TerminationReason.STAB_FACTOR_MET)
        res = report.residual_history[-1] if report.residual_history else float("nan")
        if reason is TerminationReason.SYMBOL_SINGULAR:
            res = float("nan")
        return WaveProfile(grid, values, params, c, float(res)), report

    try:
        mult = update_multiplier(grid, params, c, config.symbol_floor)
    except SymbolSingularError as exc:
        log.info("solve aborted: %s", exc)
        return finish(phi, TerminationReason.SYMBOL_SINGULAR)

    k = grid.wavenumbers
    P = profile_symbol_P(params, c, k)
    k2 = k * k
    q = stabilizing_exponent(params.p)
    theta = config.relaxation
    with np.errstate(over="ignore", invalid="ignore"):
        for it in range(1, config.max_iter + 1):
            n_hat = _nonlinear_hat(grid, params, phi, config.dealias)
            try:
                m = _stab_factor(np.fft.fft(phi), n_hat, P, k2)
            except (DegenerateProfileError, ArithmeticError) as exc:
                log.info("solve aborted at iteration %d: %s", it, exc)
                return finish(phi, TerminationReason.DIVERGED)
            new = np.fft.ifft(abs(m) ** q * mult * n_hat).real
            if theta != 1.0:
                new = theta * new + (1.0 - theta) * phi
            report.iterations = it
            report.stab_factor_history.append(float(m))
            if not (np.isfinite(m) and np.all(np.isfinite(new))):
                report.residual_history.append(float("nan"))
                return finish(phi, TerminationReason.DIVERGED)
            if config.symmetrize:
                new = 0.5 * (new + spectral.reflect(grid, new, center))
            res = residual(grid, new, params, c)
            report.residual_history.append(res)
            phi = new
            log.debug("iteration %d: m = %.15g, residual = %.3e", it, m, res)
            if not np.isfinite(res) or res > DIVERGENCE_RESIDUAL:
                return finish(phi, TerminationReason.DIVERGED)
            if res <= config.tol_residual:
                return finish(phi, TerminationReason.RESIDUAL_MET)
            if abs(m - 1.0) <= config.tol_stab:
                return finish(phi, TerminationReason.STAB_FACTOR_MET)
    return finish(phi, TerminationReason.MAX_ITER)
