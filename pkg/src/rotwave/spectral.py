"""Periodic Fourier collocation on [-L, L).

Real fields are plain ``float64`` arrays of length ``N`` sampled at the grid
nodes; spectral fields are the full complex DFT (``numpy.fft.fft`` ordering,
i.e. wavenumbers ``grid.wavenumbers``).  All operators are diagonal Fourier
multipliers.  Odd symbols annihilate the Nyquist mode, which has no
Hermitian partner.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

ZERO_MASS_TOL = 1e-10


class ZeroMassError(ValueError):
    """Field has nonzero mean where a zero-mass field is required."""


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid ``x_j = -L + j h``, ``h = 2L/N``."""

    L: float
    N: int
    x: np.ndarray = field(init=False, repr=False, compare=False)
    wavenumbers: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not np.isfinite(self.L) or self.L <= 0:
            raise ValueError(f"L must be positive, got {self.L!r}")
        if int(self.N) != self.N or self.N < 8 or self.N % 2:
            raise ValueError(f"N must be an even integer >= 8, got {self.N!r}")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", float(self.L))
        x = -self.L + self.h * np.arange(self.N)
        k = 2 * np.pi * np.fft.fftfreq(self.N, d=self.h)
        x.setflags(write=False)
        k.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "wavenumbers", k)

    @property
    def h(self) -> float:
        return 2 * self.L / self.N

    @property
    def nodes(self) -> np.ndarray:
        return self.x

    @property
    def mode_index(self) -> np.ndarray:
        """Integer index j of each wavenumber, kappa_j = pi j / L."""
        return np.rint(np.fft.fftfreq(self.N) * self.N).astype(int)

    @property
    def nyquist(self) -> np.ndarray:
        return self.mode_index == -self.N // 2

    @property
    def dk(self) -> float:
        return np.pi / self.L

    def check(self, u) -> np.ndarray:
        """Return ``u`` as a float array after checking it lives on this grid."""
        u = np.asarray(u, dtype=float)
        if u.shape != (self.N,):
            raise ValueError(f"field has shape {u.shape}, grid expects ({self.N},)")
        if not np.all(np.isfinite(u)):
            raise ValueError("field contains non-finite values")
        return u


def forward_transform(grid: Grid, u) -> np.ndarray:
    return np.fft.fft(grid.check(u))


def inverse_transform(grid: Grid, coeffs) -> np.ndarray:
    coeffs = np.asarray(coeffs)
    if coeffs.shape != (grid.N,):
        raise ValueError(f"coefficients have shape {coeffs.shape}, grid expects ({grid.N},)")
    return np.fft.ifft(coeffs).real


def apply_symbol(grid: Grid, u, symbol, odd: bool = False) -> np.ndarray:
    """Multiply the DFT of ``u`` by ``symbol`` (an array over ``grid.wavenumbers``)."""
    uh = np.fft.fft(grid.check(u)) * symbol
    if odd:
        uh[grid.nyquist] = 0.0
    return np.fft.ifft(uh).real


def derivative(grid: Grid, u, order: int = 1) -> np.ndarray:
    """Spectral derivative of order 1 to 4."""
    if order not in (1, 2, 3, 4):
        raise ValueError(f"derivative order must be 1..4, got {order}")
    k = grid.wavenumbers
    return apply_symbol(grid, u, (1j * k) ** order, odd=order % 2 == 1)


def hilbert(grid: Grid, u) -> np.ndarray:
    """Hilbert transform, symbol ``-i sign(kappa)`` with ``sign(0) = 0``."""
    return apply_symbol(grid, u, -1j * np.sign(grid.wavenumbers), odd=True)


def mean(u) -> float:
    return float(np.mean(u))


def check_zero_mass(grid: Grid, u, tol: float = ZERO_MASS_TOL) -> np.ndarray:
    """Raise :class:`ZeroMassError` unless ``|mean(u)| <= tol * rms(u)``."""
    u = grid.check(u)
    mu = abs(np.mean(u))
    scale = np.sqrt(np.mean(u * u))
    if mu > tol * scale:
        raise ZeroMassError(
            f"zero-mass condition violated: |mean| = {mu:.3e} exceeds {tol:.1e} x rms = {tol * scale:.3e}")
    return u


def project_zero_mass(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return u - u.mean()


def antiderivative(grid: Grid, u, zero_mass_tol: float = ZERO_MASS_TOL) -> np.ndarray:
    """Zero-mean antiderivative, symbol ``1/(i kappa)`` and 0 at ``kappa = 0``."""
    u = check_zero_mass(grid, u, zero_mass_tol)
    k = grid.wavenumbers
    sym = np.zeros(grid.N, dtype=complex)
    nz = k != 0
    sym[nz] = 1.0 / (1j * k[nz])
    return apply_symbol(grid, u, sym, odd=True)


def half_derivative(grid: Grid, u) -> np.ndarray:
    """D^{1/2}, symbol ``|kappa|^{1/2}``."""
    return apply_symbol(grid, u, np.sqrt(np.abs(grid.wavenumbers)))


def dealias_mask(grid: Grid) -> np.ndarray:
    """Boolean mask keeping modes with ``|j| <= N/3`` (two-thirds rule)."""
    return np.abs(grid.mode_index) <= grid.N / 3


def dealias(grid: Grid, coeffs) -> np.ndarray:
    coeffs = np.array(coeffs, dtype=complex)
    coeffs[~dealias_mask(grid)] = 0.0
    return coeffs


def shift(grid: Grid, u, s: float) -> np.ndarray:
    """Translate ``u`` by ``s`` (returns ``u(x - s)``) using the Fourier phase."""
    k = grid.wavenumbers
    phase = np.exp(-1j * k * s)
    # Nyquist: keep the real (cosine) part of the shift
    phase[grid.nyquist] = np.cos(k[grid.nyquist] * s)
    return apply_symbol(grid, u, phase)


def reflect(grid: Grid, u, center: float = 0.0) -> np.ndarray:
    """Mirror image ``u(2 center - x)``."""
    u = grid.check(u)
    mirrored = u[(-np.arange(grid.N)) % grid.N]
    if center == 0.0:
        return mirrored
    return shift(grid, mirrored, 2.0 * center)


def l2_norm(grid: Grid, u) -> float:
    """Discrete L2 norm ``sqrt(h sum u_j^2)``."""
    u = np.asarray(u, dtype=float)
    return float(np.sqrt(grid.h * np.dot(u, u)))
