"""Conserved quantities and variational functionals on the periodic grid.

Every integral is the node sum times ``h``, which is the exact integral of
the trigonometric interpolant.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import spectral
from .model import ModelParams, antiderivative_F
from .spectral import Grid


@dataclass(frozen=True)
class InvariantSet:
    mass: float
    momentum: float
    energy: float
    h_norm: float

    def as_dict(self) -> dict:
        return asdict(self)


def integrate(grid: Grid, values) -> float:
    return float(grid.h * np.sum(values))


def mass(grid: Grid, u) -> float:
    return integrate(grid, grid.check(u))


def momentum(grid: Grid, u) -> float:
    """V(u) = int u^2 / 2."""
    u = grid.check(u)
    return integrate(grid, 0.5 * u * u)


def _rotation_term(grid: Grid, u, params: ModelParams):
    if params.gamma == 0:
        return 0.0
    return spectral.antiderivative(grid, u)


def energy(grid: Grid, u, params: ModelParams) -> float:
    """Hamiltonian

    E(u) = int alpha u^2/2 + F(u) - (beta/2) u H u_x + (delta/2) u_x^2
               + (gamma/2) (d^{-1} u)^2.
    """
    u = grid.check(u)
    ux = spectral.derivative(grid, u, 1)
    density = 0.5 * params.alpha * u * u + antiderivative_F(params, u)
    if params.beta:
        density = density - 0.5 * params.beta * u * spectral.hilbert(grid, ux)
    if params.delta:
        density = density + 0.5 * params.delta * ux * ux
    if params.gamma:
        w = _rotation_term(grid, u, params)
        density = density + 0.5 * params.gamma * w * w
    return integrate(grid, density)


def functional_I(grid: Grid, u, params: ModelParams, c: float) -> float:
    """I(u) = int -(c - alpha) u^2 - beta u H u_x + gamma (d^{-1} u)^2 + delta u_x^2."""
    u = grid.check(u)
    ux = spectral.derivative(grid, u, 1)
    density = -(c - params.alpha) * u * u
    if params.beta:
        density = density - params.beta * u * spectral.hilbert(grid, ux)
    if params.gamma:
        w = _rotation_term(grid, u, params)
        density = density + params.gamma * w * w
    if params.delta:
        density = density + params.delta * ux * ux
    return integrate(grid, density)


def functional_K(grid: Grid, u, params: ModelParams) -> float:
    """K(u) = -(p + 1) int F(u), homogeneous of degree p + 1."""
    u = grid.check(u)
    return -(params.p + 1) * integrate(grid, antiderivative_F(params, u))


def h_norm(grid: Grid, u) -> float:
    """||u_x|| + ||D^{1/2} u|| + ||d^{-1} u|| (zero-mass fields only)."""
    u = spectral.check_zero_mass(grid, u)
    return (spectral.l2_norm(grid, spectral.derivative(grid, u, 1))
            + spectral.l2_norm(grid, spectral.half_derivative(grid, u))
            + spectral.l2_norm(grid, spectral.antiderivative(grid, u)))


def invariant_set(grid: Grid, u, params: ModelParams) -> InvariantSet:
    """Mass, momentum, energy and H-norm of ``u``.

    When gamma = 0 the field need not have zero mass; the H-norm is then
    taken of its zero-mean part.
    """
    u = grid.check(u)
    hn_field = u if params.gamma > 0 else spectral.project_zero_mass(u)
    return InvariantSet(
        mass=mass(grid, u),
        momentum=momentum(grid, u),
        energy=energy(grid, u, params),
        h_norm=h_norm(grid, hn_field),
    )
