"""Solitary waves of a rotation-modified Benjamin equation.

The package computes traveling-wave profiles with a Petviashvili fixed-point
iteration, evolves them with an integrating-factor RK4 scheme, and provides
the existence tests, sweeps and tail diagnostics used to study them.
"""

from __future__ import annotations

from .analysis import (ExistenceCase, ExistenceVerdict, FitInfeasibleError, UnsupportedRegimeError,
                       beta_sweep, classify_existence, compare_ostrovsky, speed_sweep, tail_decay_fit)
from .evolve import EvolutionConfig, StepFailure, Trajectory, evolve, linear_propagate, nonlinear_step
from .invariants import InvariantSet, energy, functional_I, functional_K, invariant_set, mass, momentum
from .model import ModelParams, PreconditionError, linear_dispersion_m, phase_velocity, profile_symbol_P
from .petviashvili import (Custom, Gaussian, NegativeSech, SechSquared, SolverConfig, SolverReport,
                           TerminationReason, WaveProfile, residual, solve, stabilizing_factor)
from .spectral import Grid, ZeroMassError

__version__ = "0.1.0"

__all__ = [
    "Custom", "EvolutionConfig", "ExistenceCase", "ExistenceVerdict", "FitInfeasibleError",
    "Gaussian", "Grid", "InvariantSet", "ModelParams", "NegativeSech", "PreconditionError",
    "SechSquared", "SolverConfig", "SolverReport", "StepFailure", "TerminationReason",
    "Trajectory", "UnsupportedRegimeError", "WaveProfile", "ZeroMassError",
    "beta_sweep", "classify_existence", "compare_ostrovsky", "energy", "evolve",
    "functional_I", "functional_K", "invariant_set", "linear_dispersion_m", "linear_propagate",
    "mass", "momentum", "nonlinear_step", "phase_velocity", "profile_symbol_P", "residual",
    "solve", "speed_sweep", "stabilizing_factor", "tail_decay_fit",
]
