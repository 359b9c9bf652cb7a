"""Frequency grid and the discrete transform conventions.

Everything in the package lives on a uniform, power-of-two frequency grid
centered on a carrier.  All arithmetic happens in detuning coordinates
relative to the carrier; the absolute center is metadata only.

Conventions fixed here and used everywhere else:

* frequency axis  ``w_k = (k - N/2) * spacing``
* time step       ``dt = 2*pi / (N * spacing)`` so ``spacing * dt = 2*pi/N``
* time axis       ``t_j = (j - N/2) * dt``
* centered DFT    ``Phi(x)[j] = (1/sqrt(N)) * sum_k x[k] e^{-2i pi (k-N/2)(j-N/2)/N}``

``Phi`` is unitary, ``Phi^2`` is an exact index reversal (parity) and
``Phi^4`` is the identity.  The physical frequency -> time map additionally
carries the quadrature measure factor ``sqrt(spacing/dt)`` so that it is the
midpoint Riemann sum of the continuum transform and maps measure-normalized
spectra to measure-normalized temporal amplitudes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform frequency grid.

    Parameters
    ----------
    n_points:
        Number of bins.  Must be a power of two and at least 8.
    spacing:
        Frequency bin width (angular frequency units).
    center:
        Absolute carrier frequency.  Metadata only; no arithmetic uses it.
    """

    n_points: int
    spacing: float
    center: float = 0.0

    def __post_init__(self):
        n = self.n_points
        if not isinstance(n, int) or n < 8 or n & (n - 1) != 0:
            raise ValueError(f"n_points must be a power of two >= 8, got {n!r}")
        if not (math.isfinite(self.spacing) and self.spacing > 0):
            raise ValueError(f"spacing must be positive and finite, got {self.spacing!r}")
        if not math.isfinite(self.center):
            raise ValueError(f"center must be finite, got {self.center!r}")

    @property
    def dt(self) -> float:
        """Time step of the conjugate axis, ``2*pi / (n_points * spacing)``."""
        return 2.0 * math.pi / (self.n_points * self.spacing)

    @property
    def omega_axis(self) -> np.ndarray:
        """Detuning of every bin relative to the carrier."""
        return (np.arange(self.n_points) - self.n_points // 2) * self.spacing

    @property
    def time_axis(self) -> np.ndarray:
        """Time axis conjugate to :attr:`omega_axis`."""
        return (np.arange(self.n_points) - self.n_points // 2) * self.dt

    @property
    def omega_span(self) -> float:
        """Full width of the frequency window, ``n_points * spacing``."""
        return self.n_points * self.spacing

    @property
    def time_span(self) -> float:
        """Full width of the time window, ``n_points * dt``."""
        return self.n_points * self.dt


def make_grid(n_points: int, spacing: float, center: float = 0.0) -> FrequencyGrid:
    """Construct a :class:`FrequencyGrid`, validating the parameters."""
    return FrequencyGrid(n_points=n_points, spacing=spacing, center=center)


def balanced_spacing(n_points: int) -> float:
    """Spacing for which the frequency and time steps coincide, ``sqrt(2*pi/N)``."""
    return math.sqrt(2.0 * math.pi / n_points)


def balanced_grid(n_points: int, center: float = 0.0) -> FrequencyGrid:
    """Grid with ``spacing == dt``.

    On a balanced grid the Fourier gate exchanges the physical frequency and
    time axes without rescaling, so the gate identities that relate the two
    axes hold with unscaled parameters.  Unit tests for those identities use
    balanced grids.
    """
    return make_grid(n_points, balanced_spacing(n_points), center)


# ----------------------------- centered transforms -----------------------------


def centered_dft(values: np.ndarray, axis: int = -1) -> np.ndarray:
    """Unitary DFT with both index origins at ``N/2``.

    Implements ``Phi`` of the module docstring via an fftshift sandwich; the
    result has unit l2 norm whenever the input does.
    """
    n = values.shape[axis]
    shifted = np.fft.ifftshift(values, axes=axis)
    spec = np.fft.fft(shifted, axis=axis)
    return np.fft.fftshift(spec, axes=axis) / math.sqrt(n)


def centered_idft(values: np.ndarray, axis: int = -1) -> np.ndarray:
    """Inverse of :func:`centered_dft`."""
    n = values.shape[axis]
    shifted = np.fft.ifftshift(values, axes=axis)
    spec = np.fft.ifft(shifted, axis=axis)
    return np.fft.fftshift(spec, axes=axis) * math.sqrt(n)


def parity_flip(values: np.ndarray, axis: int = -1) -> np.ndarray:
    """Exact index reversal ``k -> (N - k) mod N``, equal to ``Phi^2``.

    Bin 0 (the unpaired edge bin of the asymmetric range ``[-N/2, N/2-1]``)
    maps to itself.
    """
    return np.roll(np.flip(values, axis=axis), 1, axis=axis)


def spectral_to_temporal(values: np.ndarray, grid: FrequencyGrid, axis: int = -1) -> np.ndarray:
    """Physical frequency -> time map, including the quadrature measure factor.

    ``out[j]`` is the midpoint Riemann sum of
    ``(1/sqrt(2*pi)) * integral S(w) e^{-i w t_j} dw`` over the grid, i.e.
    ``sqrt(spacing/dt) * Phi(values)``.  Measure-weighted norm is preserved:
    ``sum |S|^2 spacing == sum |out|^2 dt``.
    """
    return math.sqrt(grid.spacing / grid.dt) * centered_dft(values, axis=axis)


def temporal_to_spectral(values: np.ndarray, grid: FrequencyGrid, axis: int = -1) -> np.ndarray:
    """Inverse of :func:`spectral_to_temporal`."""
    return math.sqrt(grid.dt / grid.spacing) * centered_idft(values, axis=axis)


# ----------------------------- support accounting -----------------------------

# Fraction of probability mass tolerated outside the central window before an
# operation refuses to proceed; see errors.SupportGuardError.
GUARD_MASS_LIMIT = 1e-4
# The guarded window is the central 80% of the axis (half-width 0.4*N bins),
# shrunk by an operation-specific margin factor (sqrt(2) for the beam splitter).
GUARD_WINDOW_FRACTION = 0.8


def outside_window_fraction(weights: np.ndarray, margin: float = 1.0) -> float:
    """Fraction of ``weights`` outside the guarded central window.

    ``weights`` is a 1D nonnegative mass profile over grid bins.  The window
    is centered on bin ``N/2`` with half-width ``0.4 * N / margin`` bins.
    Returns 0 for an all-zero profile.
    """
    n = len(weights)
    half_width = 0.5 * GUARD_WINDOW_FRACTION * n / margin
    distance = np.abs(np.arange(n) - n // 2)
    total = float(np.sum(weights))
    if total <= 0.0:
        return 0.0
    return float(np.sum(weights[distance > half_width])) / total
