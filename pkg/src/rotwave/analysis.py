"""Existence conditions, parameter sweeps and profile diagnostics."""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import spectral
from .model import ModelParams, check_speed
from .petviashvili import Custom, SolverConfig, WaveProfile, solve
from .spectral import Grid


class UnsupportedRegimeError(ValueError):
    pass


class FitInfeasibleError(ValueError):
    pass


class ExistenceCase(str, enum.Enum):
    NONE = "None"
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"


@dataclass(frozen=True)
class ExistenceVerdict:
    admissible: bool
    matched_case: ExistenceCase
    c_star: float | None
    z_plus: float | None
    A: float
    B: float
    resonance_free: bool

    def as_dict(self) -> dict:
        d = asdict(self)
        d["matched_case"] = self.matched_case.value
        return d


def c_star(gamma: float, delta: float) -> float:
    return 2.0 * math.sqrt(gamma * delta)


def z_plus(beta: float, gamma: float, delta: float) -> float:
    """Upper speed bound of the beta > 0 existence case."""
    r = beta / (4 * delta)
    return 0.5 * (-beta * (1 + r) + (4 * delta - beta) * math.sqrt(gamma / delta + r * r))


def discriminants(params: ModelParams) -> tuple[float, float]:
    """A = 4 delta - beta and B = beta^3 - gamma (4 delta - beta)^2."""
    A = 4 * params.delta - params.beta
    return A, params.beta ** 3 - params.gamma * A * A


def classify_existence(params: ModelParams, c: float) -> ExistenceVerdict:
    """Check the four sufficient conditions for solitary-wave existence, in order."""
    g, d, b = params.gamma, params.delta, params.beta
    if g <= 0 or d <= 0:
        raise UnsupportedRegimeError("existence conditions need gamma > 0 and delta > 0")
    s = c - params.alpha
    cs = c_star(g, d)
    A, B = discriminants(params)
    zp = z_plus(b, g, d) if b >= 0 and A > 0 else None
    case = ExistenceCase.NONE
    if b < 0 and s < 0:
        case = ExistenceCase.I
    elif b < 0 and 0 < s < cs:
        case = ExistenceCase.II
    elif b > 0 and s <= -b * b / (4 * d):
        case = ExistenceCase.III
    elif b > 0 and A > 0 and b ** 3 < g * A * A and 0 < s < zp:
        case = ExistenceCase.IV
    return ExistenceVerdict(
        admissible=case is not ExistenceCase.NONE,
        matched_case=case,
        c_star=cs,
        z_plus=zp,
        A=A,
        B=B,
        resonance_free=bool(b < 0 or (A > 0 and B < 0)),
    )


@dataclass
class SweepRow:
    param: float
    u_max: float
    u_min: float
    converged: bool
    residual: float
    iterations: int = 0
    termination: str = ""


@dataclass
class SweepResult:
    name: str
    rows: list = field(default_factory=list)
    profiles: list = field(default_factory=list, repr=False)

    @property
    def params(self) -> np.ndarray:
        return np.array([r.param for r in self.rows])

    def converged_rows(self) -> list:
        return [r for r in self.rows if r.converged]


def _max_workers(n: int) -> int:
    env = os.environ.get("ROTWAVE_THREADS")
    limit = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(limit, n))


def _row(value, prof: WaveProfile, report) -> SweepRow:
    finite = np.all(np.isfinite(prof.values))
    return SweepRow(
        param=float(value),
        u_max=prof.u_max if finite else float("nan"),
        u_min=prof.u_min if finite else float("nan"),
        converged=report.converged,
        residual=prof.residual,
        iterations=report.iterations,
        termination=report.termination_reason.value,
    )


def _sweep(name, values, make_problem, grid, config, warm_start):
    values = sorted(float(v) for v in values)
    if not values:
        raise ValueError(f"{name} sweep needs at least one value")
    config = config or SolverConfig()
    result = SweepResult(name)
    if warm_start:
        guess = config.initial_guess
        for v in values:
            params, c = make_problem(v)
            prof, rep = solve(params, c, grid, config.replace(initial_guess=guess))
            result.rows.append(_row(v, prof, rep))
            result.profiles.append(prof)
            if rep.converged:
                guess = Custom(prof.values, center=getattr(guess, "center", None))
        return result

    def job(v):
        params, c = make_problem(v)
        return solve(params, c, grid, config)

    with ThreadPoolExecutor(max_workers=_max_workers(len(values))) as pool:
        outcomes = list(pool.map(job, values))
    for v, (prof, rep) in zip(values, outcomes):
        result.rows.append(_row(v, prof, rep))
        result.profiles.append(prof)
    return result


def speed_sweep(params: ModelParams, speeds, grid: Grid, config: SolverConfig | None = None,
                warm_start: bool = False) -> SweepResult:
    """Solve for each speed and record the extreme excursions.

    Rows are sorted by speed.  With ``warm_start`` each solve starts from
    the previous converged profile (sequential); otherwise solves run in a
    thread pool capped by ``ROTWAVE_THREADS``.
    """
    return _sweep("speed", speeds, lambda c: (params, check_speed(c)), grid, config, warm_start)


def beta_sweep(params: ModelParams, betas, c: float, grid: Grid,
               config: SolverConfig | None = None, warm_start: bool = False) -> SweepResult:
    c = check_speed(c)
    return _sweep("beta", betas, lambda b: (params.replace(beta=b), c), grid, config, warm_start)


@dataclass(frozen=True)
class DecayFit:
    exponent: float
    prefactor: float
    fit_window: tuple
    goodness: float
    n_points: int


def core_width(grid: Grid, u) -> float:
    """Half-width at half-maximum of the main extremum of ``u``."""
    u = np.asarray(u, dtype=float)
    j0 = int(np.argmax(np.abs(u)))
    level = 0.5 * abs(u[j0])
    j = j0
    n = 0
    while abs(u[j % grid.N]) > level and n < grid.N // 2:
        j += 1
        n += 1
    return max(n, 1) * grid.h


def envelope_points(grid: Grid, u, x0: float, window: tuple) -> tuple[np.ndarray, np.ndarray]:
    """Local maxima of |u| whose distance from ``x0`` lies in ``window``."""
    a = np.abs(np.asarray(u, dtype=float))
    left, right = np.roll(a, 1), np.roll(a, -1)
    peaks = np.nonzero((a > left) & (a >= right))[0]
    dist = np.abs((grid.x[peaks] - x0 + grid.L) % (2 * grid.L) - grid.L)
    keep = (dist >= window[0]) & (dist <= window[1])
    return dist[keep], a[peaks[keep]]


def tail_decay_fit(profile: WaveProfile, window: tuple | None = None,
                   floor: float = 1e-12) -> DecayFit:
    """Fit ``|phi(X)| ~ C |X|^(-r)`` to the envelope of the tails.

    The default window runs from five core widths to half the domain.
    """
    grid, u = profile.grid, profile.values
    x0 = float(grid.x[np.argmax(np.abs(u))])
    if window is None:
        window = (5 * core_width(grid, u), 0.5 * grid.L)
    lo, hi = float(window[0]), float(window[1])
    if not 0 < lo < hi <= grid.L:
        raise FitInfeasibleError(f"fit window {window} must satisfy 0 < X_min < X_max <= L")
    X, env = envelope_points(grid, u, x0, (lo, hi))
    ok = env > floor
    X, env = X[ok], env[ok]
    if X.size < 4:
        raise FitInfeasibleError(f"only {X.size} envelope points above {floor:g} in window {window}")
    lx, ly = np.log(X), np.log(env)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    goodness = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return DecayFit(exponent=float(-slope), prefactor=float(np.exp(intercept)),
                    fit_window=(lo, hi), goodness=float(min(max(goodness, 0.0), 1.0)),
                    n_points=int(X.size))


def phase_portrait(profile: WaveProfile) -> np.ndarray:
    """Array of shape (N, 2) holding (phi, phi') at each node."""
    grid, u = profile.grid, profile.values
    return np.column_stack([u, spectral.derivative(grid, u, 1)])


def extremum_radii(profile: WaveProfile, side: int = 1) -> np.ndarray:
    """Phase-plane radii at the successive local extrema moving away from the peak.

    ``side=+1`` walks towards increasing x, ``-1`` towards decreasing x.
    """
    pp = phase_portrait(profile)
    u = pp[:, 0]
    n = u.size
    j0 = int(np.argmax(np.abs(u)))
    order = (j0 + side * np.arange(n // 2)) % n
    w = u[order]
    inner = np.arange(1, w.size - 1)
    ext = inner[(w[inner] - w[inner - 1]) * (w[inner + 1] - w[inner]) < 0]
    return np.hypot(pp[order[ext], 0], pp[order[ext], 1])


def count_deep_minima(u, fraction: float = 0.1) -> int:
    """Number of local minima lying below ``-fraction * |min(u)|``."""
    u = np.asarray(u, dtype=float)
    left, right = np.roll(u, 1), np.roll(u, -1)
    minima = (u < left) & (u <= right)
    return int(np.count_nonzero(minima & (u < -fraction * abs(u.min()))))


@dataclass
class OstrovskyComparison:
    speed: float
    beta: float
    u_max: float
    u_min: float
    u_max_ostrovsky: float
    u_min_ostrovsky: float
    converged: bool
    converged_ostrovsky: bool

    def as_dict(self) -> dict:
        return asdict(self)


def compare_ostrovsky(params: ModelParams, c: float, grid: Grid,
                      config: SolverConfig | None = None):
    """Solve with the given beta > 0 and with beta = 0, everything else equal."""
    if not params.beta > 0:
        raise ValueError(f"comparison needs beta > 0, got {params.beta}")
    c = check_speed(c)
    prof, rep = solve(params, c, grid, config)
    ost, rep_o = solve(params.replace(beta=0.0), c, grid, config)
    record = OstrovskyComparison(
        speed=c, beta=params.beta,
        u_max=prof.u_max, u_min=prof.u_min,
        u_max_ostrovsky=ost.u_max, u_min_ostrovsky=ost.u_min,
        converged=rep.converged, converged_ostrovsky=rep_o.converged,
    )
    return prof, ost, record
