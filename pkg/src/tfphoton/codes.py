"""Logical qubits in a single photon's spectrum: two-peak and comb codes.

The two-peak (cat) code stores the bit in the relative sign of two separated
Gaussian peaks, read out through frequency parity after recentering; it is
insensitive to any common frequency shift.  The comb (GKP-style) code stores
the bit in which interleaved frequency lattice the comb occupies, read out
through a circular centroid at the lattice period; it is insensitive to any
temporal shift.  Decoders return a bit plus a confidence in [0, 1] that
degrades linearly (comb) or sinusoidally (two-peak) as noise pushes the state
toward the decision boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SupportGuardError
from .gates import freq_displace, time_displace
from .grid import (
    GUARD_MASS_LIMIT,
    GUARD_WINDOW_FRACTION,
    FrequencyGrid,
    centered_dft,
    centered_idft,
)
from .states import SpectralAmplitude, ensure_support, spectral_amplitude

PEAK_SEPARATION_FACTOR = 4.0


def _check_positive(name: str, value) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class CatCodeSpec:
    """Two-peak code: peaks at ``±separation/2``, each of width ``peak_width``."""

    separation: float
    peak_width: float

    def __post_init__(self):
        _check_positive("separation", self.separation)
        _check_positive("peak_width", self.peak_width)
        if self.separation < PEAK_SEPARATION_FACTOR * self.peak_width:
            raise ValueError(
                "peaks are not distinguishable: separation must be at least "
                f"{PEAK_SEPARATION_FACTOR:g} peak widths"
            )


@dataclass(frozen=True)
class GkpCodeSpec:
    """Comb code: teeth of width ``peak_width`` on the lattice ``spacing * (2n + bit)``,
    under a Gaussian envelope of width ``envelope_width``."""

    spacing: float
    peak_width: float
    envelope_width: float

    def __post_init__(self):
        _check_positive("spacing", self.spacing)
        _check_positive("peak_width", self.peak_width)
        _check_positive("envelope_width", self.envelope_width)
        if self.spacing < PEAK_SEPARATION_FACTOR * self.peak_width:
            raise ValueError(
                "comb teeth are not distinguishable: spacing must be at least "
                f"{PEAK_SEPARATION_FACTOR:g} peak widths"
            )


@dataclass(frozen=True)
class DecodeResult:
    bit: int
    confidence: float


def _check_bit(bit) -> int:
    if bit not in (0, 1):
        raise ValueError(f"logical bit must be 0 or 1, got {bit!r}")
    return int(bit)


def _cat_values(grid: FrequencyGrid, spec: CatCodeSpec, bit: int) -> np.ndarray:
    w = grid.omega_axis
    half = 0.5 * spec.separation
    four_w2 = 4.0 * spec.peak_width**2
    upper = np.exp(-((w - half) ** 2) / four_w2)
    lower = np.exp(-((w + half) ** 2) / four_w2)
    sign = 1.0 if bit == 0 else -1.0
    return (lower + sign * upper).astype(np.complex128)


def _gkp_values(grid: FrequencyGrid, spec: GkpCodeSpec, bit: int) -> np.ndarray:
    w = grid.omega_axis
    reach = float(np.max(np.abs(w))) + 5.0 * spec.peak_width
    n_max = int(math.ceil(reach / (2.0 * spec.spacing)))
    teeth = np.zeros_like(w)
    four_w2 = 4.0 * spec.peak_width**2
    for n in range(-n_max, n_max + 1):
        center = (2 * n + bit) * spec.spacing
        teeth += np.exp(-((w - center) ** 2) / four_w2)
    envelope = np.exp(-(w**2) / (4.0 * spec.envelope_width**2))
    return (teeth * envelope).astype(np.complex128)


def encode(grid: FrequencyGrid, spec, bit) -> SpectralAmplitude:
    """Codeword for ``bit`` under ``spec`` on ``grid``, normalized and guarded."""
    bit = _check_bit(bit)
    if isinstance(spec, CatCodeSpec):
        values = _cat_values(grid, spec, bit)
    elif isinstance(spec, GkpCodeSpec):
        values = _gkp_values(grid, spec, bit)
    else:
        raise TypeError(f"unknown code spec type {type(spec).__name__}")
    state = spectral_amplitude(grid, values)
    ensure_support(state, where="encode")
    return state


def apply_shift_noise(psi: SpectralAmplitude, mu: float, s: float) -> SpectralAmplitude:
    """Frequency shift ``mu`` followed by temporal shift ``s`` (the noise model)."""
    return time_displace(freq_displace(psi, mu), s)


def _parity_overlap(values: np.ndarray, spacing: float) -> float:
    flipped = np.roll(values[::-1], 1)
    return float(np.real(np.sum(np.conj(values) * flipped)) * spacing)


def _decode_cat(grid: FrequencyGrid, psi: SpectralAmplitude) -> DecodeResult:
    weight = np.abs(psi.values) ** 2
    centroid = float(np.sum(grid.omega_axis * weight) * grid.spacing)
    recentered = freq_displace(psi, -centroid)
    parity = _parity_overlap(recentered.values, grid.spacing)
    bit = 0 if parity >= 0.0 else 1
    return DecodeResult(bit, min(abs(parity), 1.0))


def _wrapped_position(values_sq: np.ndarray, grid: FrequencyGrid, spacing: float) -> float:
    phases = np.exp(1j * math.pi * grid.omega_axis / spacing)
    z = np.sum(values_sq * phases) * grid.spacing
    if abs(z) < 1e-12:
        raise ValueError("comb decode failed: circular centroid has no direction")
    return (spacing / math.pi) * float(np.angle(z))


def _bit_from_position(x: float, spacing: float):
    # position folded to (-spacing, spacing]: even lattice is 0, odd is ±spacing
    d_even = abs(x)
    d_odd = spacing - abs(x)
    if d_even < d_odd:
        bit = 0
    elif d_odd < d_even:
        bit = 1
    else:
        # exact tie: take the lower-frequency of the two nearest lattice points
        bit = 0 if x > 0 else 1
    return bit, abs(d_even - d_odd) / spacing


def _decode_gkp(grid: FrequencyGrid, spec: GkpCodeSpec, psi: SpectralAmplitude) -> DecodeResult:
    x = _wrapped_position(np.abs(psi.values) ** 2, grid, spec.spacing)
    bit, confidence = _bit_from_position(x, spec.spacing)
    return DecodeResult(bit, confidence)


def decode(spec, psi: SpectralAmplitude) -> DecodeResult:
    """Read the logical bit back out of a (possibly noisy) codeword."""
    if isinstance(spec, CatCodeSpec):
        return _decode_cat(psi.grid, psi)
    if isinstance(spec, GkpCodeSpec):
        return _decode_gkp(psi.grid, spec, psi)
    raise TypeError(f"unknown code spec type {type(spec).__name__}")


def _guard_batch(batch: np.ndarray, grid: FrequencyGrid):
    # vectorized version of the single-state support guard, on the final
    # spectral rows and their time-domain counterparts
    n = grid.n_points
    half_width = 0.5 * GUARD_WINDOW_FRACTION * n
    outside = np.abs(np.arange(n) - n // 2) > half_width
    worst = 0.0
    for rows in (batch, centered_dft(batch, axis=1)):
        weights = np.abs(rows) ** 2
        fractions = weights[:, outside].sum(axis=1) / weights.sum(axis=1)
        worst = max(worst, float(np.max(fractions)))
    if worst > GUARD_MASS_LIMIT:
        raise SupportGuardError(
            f"noise pushed {worst:.3e} of some trial's probability mass outside "
            f"the guarded window (limit {GUARD_MASS_LIMIT:g}); enlarge the grid "
            "or reduce the noise strength"
        )


def logical_error_rate(
    grid: FrequencyGrid,
    spec,
    sigma_mu: float = 0.0,
    sigma_s: float = 0.0,
    trials: int = 1000,
    seed: int = 0,
) -> float:
    """Monte Carlo logical error rate under Gaussian shift noise.

    Each trial encodes an alternating bit, draws one frequency shift from
    ``N(0, sigma_mu)`` and one temporal shift from ``N(0, sigma_s)``, applies
    both, and decodes.  Trials are processed as one batch; the per-trial
    arithmetic is identical to ``decode(spec, apply_shift_noise(...))``.
    The draw order (all frequency shifts, then all temporal shifts) is part
    of the reproducibility contract for a given seed.
    """
    if not isinstance(trials, int) or trials < 1:
        raise ValueError(f"trials must be a positive integer, got {trials!r}")
    for name, value in (("sigma_mu", sigma_mu), ("sigma_s", sigma_s)):
        if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
            raise ValueError(f"{name} must be a non-negative finite number, got {value!r}")

    rng = np.random.default_rng(seed)
    mu_draws = rng.normal(0.0, sigma_mu, trials)
    s_draws = rng.normal(0.0, sigma_s, trials)
    bits = np.arange(trials) % 2

    codewords = np.stack([encode(grid, spec, b).values for b in (0, 1)])
    batch = codewords[bits]

    # frequency shift: phase ramp in the time representation
    time_rep = centered_dft(batch, axis=1)
    time_rep *= np.exp(-1j * np.outer(mu_draws, grid.time_axis))
    batch = centered_idft(time_rep, axis=1)
    # temporal shift: spectral phase ramp
    batch *= np.exp(1j * np.outer(s_draws, grid.omega_axis))

    _guard_batch(batch, grid)

    if isinstance(spec, CatCodeSpec):
        weight = np.abs(batch) ** 2
        centroids = weight @ grid.omega_axis * grid.spacing
        time_rep = centered_dft(batch, axis=1)
        time_rep *= np.exp(1j * np.outer(centroids, grid.time_axis))
        recentered = centered_idft(time_rep, axis=1)
        flipped = np.roll(recentered[:, ::-1], 1, axis=1)
        parity = np.real(np.sum(np.conj(recentered) * flipped, axis=1)) * grid.spacing
        decoded = (parity < 0.0).astype(np.int64)
    elif isinstance(spec, GkpCodeSpec):
        phases = np.exp(1j * math.pi * grid.omega_axis / spec.spacing)
        z = (np.abs(batch) ** 2) @ phases * grid.spacing
        x = (spec.spacing / math.pi) * np.angle(z)
        decoded = np.array(
            [_bit_from_position(xi, spec.spacing)[0] for xi in x], dtype=np.int64
        )
    else:
        raise TypeError(f"unknown code spec type {type(spec).__name__}")

    return float(np.mean(decoded != bits))
