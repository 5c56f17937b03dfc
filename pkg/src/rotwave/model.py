"""Coefficients, dispersion symbols and nonlinearity of the rotation-modified
Benjamin equation

    (u_t + alpha u_x + f(u)_x - beta H u_xx - delta u_xxx)_x = gamma u,

with the monomial nonlinearity f(u) = u**p / p.  Setting beta = 0 gives the
Ostrovsky equation, delta = 0 the rotation-modified Benjamin-Ono equation,
gamma = 0 the Benjamin equation and beta = gamma = 0 the KdV equation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class PreconditionError(ValueError):
    """Raised when a closed-form result is requested outside its hypotheses."""


@dataclass(frozen=True)
class ModelParams:
    """Coefficient set of the equation.

    Parameters
    ----------
    alpha : float
        Advection coefficient.  Any real value is accepted.
    beta : float
        Coefficient of the Hilbert-transform dispersion.
    gamma : float
        Rotation coefficient, ``gamma >= 0``.
    delta : float
        Third-order dispersion coefficient, ``delta >= 0``.
    p : int
        Homogeneity degree of the nonlinearity, ``p >= 2``.
    """

    alpha: float = 0.0
    beta: float = 1.0
    gamma: float = 1.0
    delta: float = 1.0
    p: int = 2

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.gamma < 0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if int(self.p) != self.p or self.p < 2:
            raise ValueError(f"p must be an integer >= 2, got {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    def replace(self, **changes) -> "ModelParams":
        fields = dict(alpha=self.alpha, beta=self.beta, gamma=self.gamma,
                      delta=self.delta, p=self.p)
        fields.update(changes)
        return ModelParams(**fields)


def check_speed(c: float) -> float:
    """Validate a travelling-wave speed (finite and nonzero)."""
    c = float(c)
    if not np.isfinite(c) or c == 0.0:
        raise ValueError(f"wave speed c_s must be finite and nonzero, got {c!r}")
    return c


def nonlinearity_f(params: ModelParams, u):
    """f(u) = u**p / p, homogeneous of degree p."""
    return np.asarray(u, dtype=float) ** params.p / params.p


def antiderivative_F(params: ModelParams, u):
    """F(u) = u**(p+1) / (p (p+1)), the primitive of f with F(0) = 0."""
    p = params.p
    return np.asarray(u, dtype=float) ** (p + 1) / (p * (p + 1))


def linear_dispersion_m(params: ModelParams, k):
    """Linear dispersion symbol m(k) = gamma/k + alpha k - beta k|k| + delta k^3.

    ``m(0) = 0`` by definition.  Works elementwise on arrays.
    """
    k = np.asarray(k, dtype=float)
    out = np.zeros_like(k)
    nz = k != 0
    kk = k[nz]
    out[nz] = (params.gamma / kk + params.alpha * kk
               - params.beta * kk * np.abs(kk) + params.delta * kk ** 3)
    return out if out.ndim else float(out)


def phase_velocity(params: ModelParams, k):
    """omega/k = alpha + gamma/k^2 + delta k^2 - beta |k|, for k != 0."""
    k = np.asarray(k, dtype=float)
    if np.any(k == 0):
        raise ValueError("phase velocity is undefined at k = 0")
    out = params.alpha + params.gamma / k ** 2 + params.delta * k ** 2 - params.beta * np.abs(k)
    return out if out.ndim else float(out)


def profile_symbol_P(params: ModelParams, c: float, kappa):
    """Symbol P(kappa) = kappa^2 (c - alpha) + beta |kappa|^3 - delta kappa^4 - gamma.

    The Fourier multiplier of the travelling-wave operator
    ``L = (c - alpha) + beta H d/dx + delta d^2/dx^2 + gamma d^{-2}/dx^{-2}``
    is ``P(kappa) / kappa^2`` for ``kappa != 0``.
    """
    kappa = np.asarray(kappa, dtype=float)
    a = np.abs(kappa)
    out = (kappa ** 2 * (c - params.alpha) + params.beta * a ** 3
           - params.delta * kappa ** 4 - params.gamma)
    return out if out.ndim else float(out)


def dispersion_curvature(params: ModelParams, k):
    """Second derivative of phi(k) = gamma/k - beta k|k| + delta k^3, k != 0."""
    k = np.asarray(k, dtype=float)
    out = 2 * params.gamma / k ** 3 - 2 * params.beta * np.sign(k) + 6 * params.delta * k
    return out if out.ndim else float(out)


def curvature_bound(params: ModelParams) -> float:
    """Lower bound -2 beta + 8 gamma^(1/4) delta^(3/4) on |phi''(k)|.

    Valid for gamma, delta > 0 and either beta < 0 or
    0 < beta < 4 gamma^(1/4) delta^(3/4).
    """
    g, d, b = params.gamma, params.delta, params.beta
    if g <= 0:
        raise PreconditionError("curvature bound needs gamma > 0")
    if d <= 0:
        raise PreconditionError("curvature bound needs delta > 0")
    scale = g ** 0.25 * d ** 0.75
    if not (b < 0 or 0 < b < 4 * scale):
        raise PreconditionError(
            f"curvature bound needs beta < 0 or 0 < beta < 4 gamma^(1/4) delta^(3/4) = {4 * scale:.6g}; "
            f"got beta = {b}")
    return -2 * b + 8 * scale
