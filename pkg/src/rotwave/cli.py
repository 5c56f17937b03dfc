"""Command-line front end.

    rotwave <command> --config run.json [--output DIR] [--format csv|json]

The config is one flat JSON object; see ``DEFAULTS`` for the recognised
keys.  Exit codes: 0 success, 1 numerical failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import analysis, spectral
from .evolve import EvolutionConfig, StepFailure, default_dt, evolve, peak_track
from .invariants import invariant_set
from .model import ModelParams, linear_dispersion_m, phase_velocity
from .petviashvili import (Custom, Gaussian, NegativeSech, SechSquared, SolverConfig,
                           default_guess, solve, stabilizing_factor)
from .spectral import Grid

COMMANDS = ("solve", "sweep-speed", "sweep-beta", "evolve", "check-existence",
            "dispersion", "compare")

DEFAULTS = {
    "alpha": 0.0, "beta": 1.0, "gamma": 1.0, "delta": 1.0, "p": 2,
    "c_s": None, "speeds": None, "speed_start": None, "speed_stop": None, "speed_num": None,
    "betas": None, "beta_start": None, "beta_stop": None, "beta_num": None,
    "L": 128.0, "N": 4096,
    "tol_residual": 1e-10, "tol_stab": 1e-14, "max_iter": 500, "relaxation": 0.8,
    "symmetrize": True, "dealias": True, "zero_mass_projection": None,
    "initial_guess": "default", "guess_amplitude": None, "guess_width": None, "guess_center": 0.0,
    "warm_start": False,
    "dt": None, "T": None, "record_every": 100, "initial_profile": None,
    "k_min": None, "k_max": None, "k_num": 401,
    "output_dir": "rotwave-out", "format": "csv",
}

GUESSES = {"sech2": SechSquared, "negative_sech": NegativeSech, "gaussian": Gaussian}


class ConfigError(ValueError):
    pass


# -- formatting -------------------------------------------------------------

def fmt_number(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def to_json(obj, indent: int = 0) -> str:
    """Deterministic JSON with floats printed to 17 significant digits."""
    pad, pad1 = "  " * indent, "  " * (indent + 1)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_number(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad1}{json.dumps(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(to_json(v) for v in seq) + "]"
        return "[\n" + ",\n".join(pad1 + to_json(v, indent + 1) for v in seq) + "\n" + pad + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_table(out_dir: str, stem: str, columns, rows, config: dict, fmt: str) -> str:
    """Write a table as CSV (config on a leading ``#`` line) or JSON."""
    if fmt == "json":
        path = os.path.join(out_dir, stem + ".json")
        doc = {"config": config, "columns": list(columns),
               "rows": [[_jsonable(v) for v in row] for row in rows]}
        write_text(path, to_json(doc) + "\n")
        return path
    path = os.path.join(out_dir, stem + ".csv")
    lines = ["# config: " + json.dumps(config, sort_keys=True, separators=(",", ":"), default=_plain),
             ",".join(columns)]
    lines.extend(",".join(fmt_number(v) for v in row) for row in rows)
    write_text(path, "\n".join(lines) + "\n")
    return path


def write_json(out_dir: str, name: str, doc: dict, config: dict) -> str:
    path = os.path.join(out_dir, name)
    write_text(path, to_json({"config": config, **doc}) + "\n")
    return path


def _plain(v):
    if isinstance(v, np.generic):
        return v.item()
    raise TypeError(type(v).__name__)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


# -- configuration ----------------------------------------------------------

def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    unknown = sorted(set(raw) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown config field(s): {', '.join(unknown)}")
    cfg = dict(DEFAULTS)
    cfg.update(raw)
    return cfg


def _field(cfg, name, kind, required=False):
    v = cfg.get(name)
    if v is None:
        if required:
            raise ConfigError(f"config field '{name}' is required")
        return None
    try:
        if kind is int:
            if isinstance(v, bool) or float(v) != int(v):
                raise ValueError
            return int(v)
        if kind is bool:
            if not isinstance(v, bool):
                raise ValueError
            return v
        out = float(v)
        if not math.isfinite(out):
            raise ValueError
        return out
    except (TypeError, ValueError):
        raise ConfigError(f"config field '{name}' must be {kind.__name__}, got {v!r}") from None


def build_params(cfg) -> ModelParams:
    try:
        return ModelParams(alpha=_field(cfg, "alpha", float, True), beta=_field(cfg, "beta", float, True),
                           gamma=_field(cfg, "gamma", float, True), delta=_field(cfg, "delta", float, True),
                           p=_field(cfg, "p", int, True))
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def build_grid(cfg) -> Grid:
    L, N = _field(cfg, "L", float, True), _field(cfg, "N", int, True)
    if N < 8 or N % 2:
        raise ConfigError(f"config field 'N' must be an even integer >= 8, got {N}")
    if L <= 0:
        raise ConfigError(f"config field 'L' must be positive, got {L}")
    return Grid(L, N)


def build_speed(cfg, name="c_s") -> float:
    c = _field(cfg, name, float, True)
    if c == 0:
        raise ConfigError(f"config field '{name}' must be nonzero (wave speed)")
    return c


def build_solver(cfg, params, c) -> SolverConfig:
    kind = cfg.get("initial_guess") or "default"
    if kind == "default":
        guess = None
        if cfg.get("guess_center"):
            base = default_guess(params, c)
            guess = SechSquared(base.amplitude, base.width, _field(cfg, "guess_center", float))
    elif kind in GUESSES:
        amp = _field(cfg, "guess_amplitude", float, True)
        width = _field(cfg, "guess_width", float, True)
        if width <= 0:
            raise ConfigError("config field 'guess_width' must be positive")
        guess = GUESSES[kind](amp, width, _field(cfg, "guess_center", float) or 0.0)
    else:
        raise ConfigError(f"config field 'initial_guess' must be one of default, {', '.join(GUESSES)}; got {kind!r}")
    zmp = cfg.get("zero_mass_projection")
    if zmp is not None and not isinstance(zmp, bool):
        raise ConfigError("config field 'zero_mass_projection' must be true, false or null")
    try:
        return SolverConfig(
            tol_residual=_field(cfg, "tol_residual", float, True),
            tol_stab=_field(cfg, "tol_stab", float, True),
            max_iter=_field(cfg, "max_iter", int, True),
            relaxation=_field(cfg, "relaxation", float, True),
            symmetrize=_field(cfg, "symmetrize", bool, True),
            dealias=_field(cfg, "dealias", bool, True),
            zero_mass_projection=zmp,
            initial_guess=guess,
        )
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def build_range(cfg, prefix, list_key) -> list:
    values = cfg.get(list_key)
    if values is not None:
        if not isinstance(values, list) or not values:
            raise ConfigError(f"config field '{list_key}' must be a nonempty list")
        try:
            out = [float(v) for v in values]
        except (TypeError, ValueError):
            raise ConfigError(f"config field '{list_key}' must contain numbers") from None
        if not all(math.isfinite(v) for v in out):
            raise ConfigError(f"config field '{list_key}' must contain finite numbers")
        return out
    start = _field(cfg, prefix + "_start", float)
    stop = _field(cfg, prefix + "_stop", float)
    num = _field(cfg, prefix + "_num", int)
    if start is None or stop is None or num is None:
        raise ConfigError(f"sweep needs '{list_key}' or '{prefix}_start', '{prefix}_stop', '{prefix}_num'")
    if num < 1:
        raise ConfigError(f"config field '{prefix}_num' must be >= 1")
    return [float(v) for v in np.linspace(start, stop, num)]


def resolved(cfg, out_dir, fmt) -> dict:
    """Resolved config embedded in outputs.

    The destination directory is left out so that identical runs written
    to different places stay byte-identical.
    """
    out = dict(cfg)
    out.pop("output_dir", None)
    out["format"] = fmt
    return dict(sorted(out.items()))


# -- commands ---------------------------------------------------------------

def _profile_rows(grid, u):
    du = spectral.derivative(grid, u, 1)
    return [(x, v, d) for x, v, d in zip(grid.x, u, du)]


def cmd_solve(cfg, out_dir, fmt) -> int:
    params, grid = build_params(cfg), build_grid(cfg)
    c = build_speed(cfg)
    solver = build_solver(cfg, params, c)
    prof, report = solve(params, c, grid, solver)
    config = resolved(cfg, out_dir, fmt)
    write_table(out_dir, "profile", ("x", "phi", "dphi"), _profile_rows(grid, prof.values), config, fmt)
    doc = {"report": report.as_dict(), "residual": prof.residual,
           "u_max": prof.u_max, "u_min": prof.u_min}
    if report.converged:
        doc["invariants"] = invariant_set(grid, prof.values, params).as_dict()
        doc["stabilizing_factor"] = stabilizing_factor(grid, prof.values, params, c)
    else:
        doc["invariants"] = None
        doc["stabilizing_factor"] = None
    write_json(out_dir, "report.json", doc, config)
    if not report.converged:
        print(f"solve did not converge: {report.termination_reason.value} after "
              f"{report.iterations} iterations", file=sys.stderr)
        return 1
    return 0


def _bounds_row(params):
    A, B = analysis.discriminants(params)
    if params.gamma > 0 and params.delta > 0:
        cs = analysis.c_star(params.gamma, params.delta)
        zp = analysis.z_plus(params.beta, params.gamma, params.delta) if params.beta >= 0 and A > 0 else float("nan")
    else:
        cs = zp = float("nan")
    return (cs, zp, A, B)


def cmd_sweep(cfg, out_dir, fmt, kind) -> int:
    params, grid = build_params(cfg), build_grid(cfg)
    warm = _field(cfg, "warm_start", bool, True)
    config = resolved(cfg, out_dir, fmt)
    if kind == "speed":
        speeds = build_range(cfg, "speed", "speeds")
        if any(s == 0 for s in speeds):
            raise ConfigError("config field 'speeds' must not contain 0 (wave speed)")
        solver = build_solver(cfg, params, speeds[0])
        if cfg.get("initial_guess") in (None, "default") and not cfg.get("guess_center"):
            solver = solver.replace(initial_guess=None)
        result = analysis.speed_sweep(params, speeds, grid, solver, warm_start=warm)
        rows = [(r.param, r.u_max, r.u_min, r.converged, r.residual) for r in result.rows]
        write_table(out_dir, "sweep", ("param", "u_max", "u_min", "converged", "residual"), rows, config, fmt)
        write_table(out_dir, "bounds", ("c_star", "z_plus", "A", "B"), [_bounds_row(params)], config, fmt)
    else:
        betas = build_range(cfg, "beta", "betas")
        c = build_speed(cfg)
        solver = build_solver(cfg, params, c)
        result = analysis.beta_sweep(params, betas, c, grid, solver, warm_start=warm)
        rows = [(r.param, r.u_max, r.u_min, r.converged, r.residual, r.param == 0.0) for r in result.rows]
        write_table(out_dir, "sweep", ("param", "u_max", "u_min", "converged", "residual", "ostrovsky"),
                    rows, config, fmt)
    if not result.converged_rows():
        print("no sweep row converged", file=sys.stderr)
        return 1
    return 0


def _read_profile(path, grid):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh if ln.strip() and not ln.startswith("#")]
        header = lines[0].strip().split(",")
        col = header.index("phi")
        data = np.array([float(ln.split(",")[col]) for ln in lines[1:]])
    except (OSError, ValueError, IndexError) as exc:
        raise ConfigError(f"cannot read initial_profile {path}: {exc}") from exc
    if data.shape != (grid.N,):
        raise ConfigError(f"initial_profile has {data.size} rows, grid has N = {grid.N}")
    return data


def cmd_evolve(cfg, out_dir, fmt) -> int:
    params, grid = build_params(cfg), build_grid(cfg)
    T = _field(cfg, "T", float, True)
    if T < 0:
        raise ConfigError("config field 'T' must be >= 0")
    c = _field(cfg, "c_s", float)
    if cfg.get("initial_profile"):
        u0 = _read_profile(cfg["initial_profile"], grid)
    else:
        c = build_speed(cfg)
        prof, report = solve(params, c, grid, build_solver(cfg, params, c))
        if not report.converged:
            print(f"initial profile did not converge ({report.termination_reason.value})", file=sys.stderr)
            return 1
        u0 = prof.values
    dt = _field(cfg, "dt", float)
    if dt is None:
        dt = default_dt(grid, params, c or 0.0)
    if dt <= 0:
        raise ConfigError("config field 'dt' must be positive")
    if T > 0 and dt > T:
        dt = T
    try:
        econf = EvolutionConfig(dt=dt, T=T, record_every=_field(cfg, "record_every", int, True))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    config = resolved(cfg, out_dir, fmt)
    failure = None
    try:
        traj = evolve(grid, u0, params, econf)
    except StepFailure as exc:
        traj, failure = exc.trajectory, exc
    _write_trajectory(out_dir, traj, grid, config, fmt)
    if failure is not None:
        print(f"time stepping failed: {failure}", file=sys.stderr)
        return 1
    return 0


def _write_trajectory(out_dir, traj, grid, config, fmt):
    peaks = peak_track(grid, traj.snapshots)
    V0 = traj.invariant_series[0].momentum
    E0 = traj.invariant_series[0].energy
    rows = []
    for t, u, xp, inv in zip(traj.times, traj.snapshots, peaks, traj.invariant_series):
        value = u[int(np.argmax(np.abs(u)))]
        rows.append((t, xp, value, inv.mass, inv.momentum, inv.energy,
                     inv.momentum - V0, inv.energy - E0))
    write_table(out_dir, "trajectory", ("t", "peak_x", "peak_value", "mass", "V", "E", "V_drift", "E_drift"),
                rows, config, fmt)
    snap_rows = [(t, x, v) for t, u in zip(traj.times, traj.snapshots) for x, v in zip(grid.x, u)]
    write_table(out_dir, "snapshots", ("t", "x", "u"), snap_rows, config, fmt)


def cmd_check_existence(cfg, out_dir, fmt) -> int:
    params = build_params(cfg)
    c = build_speed(cfg)
    try:
        verdict = analysis.classify_existence(params, c)
    except analysis.UnsupportedRegimeError as exc:
        raise ConfigError(str(exc)) from None
    config = resolved(cfg, out_dir, fmt)
    write_json(out_dir, "existence.json", {"verdict": verdict.as_dict()}, config)
    print(to_json(verdict.as_dict()))
    return 0


def cmd_dispersion(cfg, out_dir, fmt) -> int:
    params = build_params(cfg)
    k_min, k_max = _field(cfg, "k_min", float, True), _field(cfg, "k_max", float, True)
    k_num = _field(cfg, "k_num", int, True)
    if k_min >= k_max:
        raise ConfigError("config field 'k_min' must be smaller than 'k_max'")
    if k_min <= 0 <= k_max:
        raise ConfigError("k-range [k_min, k_max] must not contain 0 (phase velocity is singular)")
    if k_num < 2:
        raise ConfigError("config field 'k_num' must be >= 2")
    k = np.linspace(k_min, k_max, k_num)
    rows = list(zip(k, linear_dispersion_m(params, k), phase_velocity(params, k)))
    config = resolved(cfg, out_dir, fmt)
    write_table(out_dir, "dispersion", ("k", "m", "phase_velocity"), rows, config, fmt)
    A, B = analysis.discriminants(params)
    write_json(out_dir, "dispersion.json", {"A": A, "B": B}, config)
    return 0


def cmd_compare(cfg, out_dir, fmt) -> int:
    params, grid = build_params(cfg), build_grid(cfg)
    c = build_speed(cfg)
    if not params.beta > 0:
        raise ConfigError(f"config field 'beta' must be > 0 for compare, got {params.beta}")
    prof, ost, record = analysis.compare_ostrovsky(params, c, grid, build_solver(cfg, params, c))
    config = resolved(cfg, out_dir, fmt)
    write_table(out_dir, "compare", ("x", "phi", "phi_ostrovsky"),
                list(zip(grid.x, prof.values, ost.values)), config, fmt)
    write_json(out_dir, "comparison.json", {"comparison": record.as_dict()}, config)
    if not (record.converged and record.converged_ostrovsky):
        print("at least one of the two solves did not converge", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotwave", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="flat JSON run configuration")
    parser.add_argument("--output", help="output directory (overrides output_dir)")
    parser.add_argument("--format", choices=("csv", "json"), help="data file format (overrides format)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        cfg = load_config(args.config)
        out_dir = args.output or cfg.get("output_dir") or DEFAULTS["output_dir"]
        fmt = args.format or cfg.get("format") or "csv"
        if fmt not in ("csv", "json"):
            raise ConfigError(f"config field 'format' must be csv or json, got {fmt!r}")
        try:
            os.makedirs(out_dir, exist_ok=True)
        except OSError as exc:
            raise ConfigError(f"cannot create output directory {out_dir}: {exc}") from exc
        cmd = args.command
        if cmd == "solve":
            return cmd_solve(cfg, out_dir, fmt)
        if cmd == "sweep-speed":
            return cmd_sweep(cfg, out_dir, fmt, "speed")
        if cmd == "sweep-beta":
            return cmd_sweep(cfg, out_dir, fmt, "beta")
        if cmd == "evolve":
            return cmd_evolve(cfg, out_dir, fmt)
        if cmd == "check-existence":
            return cmd_check_existence(cfg, out_dir, fmt)
        if cmd == "dispersion":
            return cmd_dispersion(cfg, out_dir, fmt)
        return cmd_compare(cfg, out_dir, fmt)
    except ConfigError as exc:
        print(f"rotwave: configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # numerical failures
        print(f"rotwave: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
