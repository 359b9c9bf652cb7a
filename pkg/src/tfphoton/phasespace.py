"""Chronocyclic phase space: Wigner maps, parity probes, interference dips.

Discretization contract for the single-photon map: the frequency axis of a
Wigner map is the state's grid axis, the time axis has N points with spacing
``dt/2`` (half the temporal grid step).  With that choice the time-integral
of each Wigner row reproduces the spectral intensity exactly (not just to
spectral accuracy), and the frequency-integral reproduces the temporal
intensity up to an exponentially small half-period alias for support-guarded
states.  ``pi * W`` evaluated on the map lattice equals the displaced-parity
expectation at the same point, which is the measurement this object models.

Two-photon slices never materialize the rank-4 tensor; each fixed pair of
arguments selects a factorization (2D convolution, correlation gather, one
matrix product, or batched 1D convolutions) that touches only N^2-sized
intermediates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import corr_mixed, corr_pure, lag_sums
from .errors import GridMismatchError
from .gates import freq_displace, time_displace
from .grid import FrequencyGrid, centered_dft, centered_idft
from .states import (
    JointSpectralAmplitude,
    SpectralAmplitude,
    SpectralDensityMatrix,
    ensure_support,
)

EDGE_BIN_LIMIT = 1e-12
_REALNESS_ATOL = 1e-9


def _tau_axis(grid: FrequencyGrid) -> np.ndarray:
    half = 0.5 * grid.dt
    return (np.arange(grid.n_points) - grid.n_points // 2) * half


@dataclass(frozen=True)
class WignerMap:
    """Single-photon chronocyclic Wigner distribution on the map lattice."""

    grid: FrequencyGrid
    values: np.ndarray  # real, shape (n_points, n_points): rows frequency, cols time

    @property
    def mu_axis(self) -> np.ndarray:
        return self.grid.omega_axis

    @property
    def tau_axis(self) -> np.ndarray:
        return _tau_axis(self.grid)


def _wigner_from_correlation(corr: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    n = grid.n_points
    rows = math.sqrt(n) * centered_idft(corr, axis=1)
    if np.max(np.abs(rows.imag)) > _REALNESS_ATOL:
        raise ValueError("Wigner transform came out complex; input is not a valid state")
    return (grid.spacing / math.pi) * rows.real


def wigner(state) -> WignerMap:
    """Wigner map of a pure spectral amplitude or a spectral density matrix."""
    if isinstance(state, SpectralAmplitude):
        corr = corr_pure(state.values)
        return WignerMap(state.grid, _wigner_from_correlation(corr, state.grid))
    if isinstance(state, SpectralDensityMatrix):
        corr = corr_mixed(state.matrix)
        return WignerMap(state.grid, _wigner_from_correlation(corr, state.grid))
    raise TypeError(f"wigner expects a spectral amplitude or density matrix, got {type(state).__name__}")


def _check_edge_bin(weight: float, spacing: float):
    if weight * spacing > EDGE_BIN_LIMIT:
        raise ValueError(
            "parity is ill-defined here: the unpaired lowest-frequency bin carries "
            f"{weight * spacing:.3e} probability mass (limit {EDGE_BIN_LIMIT:g})"
        )


def parity_expectation(state) -> float:
    """Expectation of the frequency-parity operator (detuning sign flip).

    The lowest-frequency bin has no mirror partner on the grid; states with
    non-negligible mass there make the discrete parity asymmetric, which is
    reported as an error rather than silently mis-measured.
    """
    if isinstance(state, SpectralAmplitude):
        values = state.values
        _check_edge_bin(float(np.abs(values[0]) ** 2), state.grid.spacing)
        flipped = np.roll(values[::-1], 1)
        return float(np.real(np.sum(np.conj(values) * flipped)) * state.grid.spacing)
    if isinstance(state, SpectralDensityMatrix):
        rho = state.matrix
        _check_edge_bin(float(np.real(rho[0, 0])), state.grid.spacing)
        n = state.grid.n_points
        rev = (n - np.arange(n)) % n
        return float(np.real(np.sum(rho[np.arange(n), rev])) * state.grid.spacing)
    raise TypeError(f"parity_expectation expects a state, got {type(state).__name__}")


def time_displace_density(rho: SpectralDensityMatrix, s: float) -> SpectralDensityMatrix:
    """Conjugate a density matrix by the temporal displacement ``s``."""
    phase = np.exp(1j * rho.grid.omega_axis * s)
    return SpectralDensityMatrix(rho.grid, rho.matrix * np.outer(phase, np.conj(phase)))


def freq_displace_density(rho: SpectralDensityMatrix, mu: float) -> SpectralDensityMatrix:
    """Conjugate a density matrix by the spectral displacement ``mu``."""
    ramp = np.exp(-1j * mu * rho.grid.time_axis)
    left = centered_idft(centered_dft(rho.matrix, axis=0) * ramp[:, None], axis=0)
    # the transform matrix is symmetric, so acting on kets from the right works
    # through the same axis-1 helpers with the roles of the two directions swapped
    right = centered_dft(centered_idft(left, axis=1) * np.conj(ramp)[None, :], axis=1)
    return SpectralDensityMatrix(rho.grid, right)


def displaced_parity(state, mu: float, tau: float) -> float:
    """Parity after displacing the state by ``(-mu, -tau)`` in phase space.

    Equals ``pi`` times the Wigner value at ``(mu, tau)``; exact on the map
    lattice (grid frequencies, half-step times), continuum-accurate elsewhere.
    """
    if isinstance(state, SpectralAmplitude):
        moved = time_displace(freq_displace(state, -mu), -tau)
        return parity_expectation(moved)
    if isinstance(state, SpectralDensityMatrix):
        moved = time_displace_density(freq_displace_density(state, -mu), -tau)
        return parity_expectation(moved)
    raise TypeError(f"displaced_parity expects a state, got {type(state).__name__}")


def purity_from_wigner(wm: WignerMap) -> float:
    """Phase-space purity ``2 pi * sum(W^2) dmu dtau`` (1 for pure states)."""
    dmu = wm.grid.spacing
    dtau = 0.5 * wm.grid.dt
    return float(2.0 * math.pi * np.sum(wm.values**2) * dmu * dtau)


# ----------------------------- two-photon slices -----------------------------


@dataclass(frozen=True)
class WignerSlice:
    """2D cut of the two-photon Wigner tensor at two fixed arguments.

    Rows run over the signal photon's free variable, columns over the
    idler's; names are "omega_s", "t_s", "omega_i", "t_i".
    """

    row_name: str
    col_name: str
    row_axis: np.ndarray
    col_axis: np.ndarray
    values: np.ndarray
    fixed: dict


def _snap_index(grid: FrequencyGrid, value: float) -> int:
    idx = int(round(value / grid.spacing)) + grid.n_points // 2
    if not 0 <= idx < grid.n_points:
        raise ValueError(f"fixed frequency {value!r} lies outside the grid")
    return idx


def _pair_rows(n: int, m: int):
    # index pairs (a, b) = (m - s + c, m + s - c) for s on the grid, both in range
    c = n // 2
    s = np.arange(n)
    a = m - s + c
    b = m + s - c
    ok = (a >= 0) & (a < n) & (b >= 0) & (b < n)
    return a[ok], b[ok], s[ok]


def _slice_frequency_plane(jsa, t_s, t_i):
    # fixed times: one zero-padded 2D FFT convolution, evaluated at even lags
    grid_s, grid_i = jsa.grid_s, jsa.grid_i
    n_s, n_i = grid_s.n_points, grid_i.n_points
    a_idx = np.arange(n_s)[:, None]
    c_idx = np.arange(n_i)[None, :]
    x = jsa.values * np.exp(
        -1j * (a_idx * grid_s.spacing * t_s + c_idx * grid_i.spacing * t_i)
    )
    fx = np.fft.fft2(x, s=(2 * n_s, 2 * n_i))
    fy = np.fft.fft2(np.conj(x), s=(2 * n_s, 2 * n_i))
    conv = np.fft.ifft2(fx * fy)
    picked = conv[0 : 2 * n_s : 2, 0 : 2 * n_i : 2]
    scale = grid_s.spacing * grid_i.spacing / math.pi**2
    return scale * picked


def _slice_time_plane(jsa, m_s, m_i):
    # fixed frequencies: gather the 2D correlation at (m_s, m_i), transform both axes
    grid_s, grid_i = jsa.grid_s, jsa.grid_i
    n_s, n_i = grid_s.n_points, grid_i.n_points
    a_s, b_s, s_s = _pair_rows(n_s, m_s)
    a_i, b_i, s_i = _pair_rows(n_i, m_i)
    corr = np.zeros((n_s, n_i), dtype=np.complex128)
    corr[np.ix_(s_s, s_i)] = jsa.values[np.ix_(a_s, a_i)] * np.conj(
        jsa.values[np.ix_(b_s, b_i)]
    )
    out = centered_idft(centered_idft(corr, axis=0), axis=1)
    scale = (
        grid_s.spacing * grid_i.spacing / math.pi**2 * math.sqrt(n_s) * math.sqrt(n_i)
    )
    return scale * out


def _conditional_idler_matrix(jsa, m_s, t_s):
    # sum over signal pair rows collapses to one matrix product
    grid_s = jsa.grid_s
    a, b, _ = _pair_rows(grid_s.n_points, m_s)
    phase_a = np.exp(-1j * a * grid_s.spacing * t_s)
    phase_b = np.exp(-1j * b * grid_s.spacing * t_s)
    m1 = jsa.values[a, :] * phase_a[:, None]
    m2 = jsa.values[b, :] * phase_b[:, None]
    return (grid_s.spacing / math.pi) * (m1.T @ np.conj(m2))


def _slice_same_photon(jsa, m_s, t_s):
    # fixed signal pair: idler-plane map of the conditional matrix
    cond = _conditional_idler_matrix(jsa, m_s, t_s)
    grid_i = jsa.grid_i
    rows = math.sqrt(grid_i.n_points) * centered_idft(corr_mixed(cond), axis=1)
    return (grid_i.spacing / math.pi) * rows


def _slice_cross(jsa, m_s, t_i):
    # fixed (signal frequency, idler time): batched 1D convolutions over the
    # signal pair rows, then one transform to the signal time axis
    grid_s, grid_i = jsa.grid_s, jsa.grid_i
    n_s, n_i = grid_s.n_points, grid_i.n_points
    a, b, s = _pair_rows(n_s, m_s)
    c_idx = np.arange(n_i)[None, :]
    phase = np.exp(-1j * c_idx * grid_i.spacing * t_i)
    x = jsa.values[a, :] * phase
    y = np.conj(jsa.values[b, :] * phase)
    fx = np.fft.fft(x, n=2 * n_i, axis=1)
    fy = np.fft.fft(y, n=2 * n_i, axis=1)
    conv = np.fft.ifft(fx * fy, axis=1)[:, 0 : 2 * n_i : 2]
    per_s = np.zeros((n_s, n_i), dtype=np.complex128)
    per_s[s, :] = conv
    out = math.sqrt(n_s) * centered_idft(per_s, axis=0)
    scale = grid_s.spacing * grid_i.spacing / math.pi**2
    return scale * out


def _swap_arms(jsa: JointSpectralAmplitude) -> JointSpectralAmplitude:
    return JointSpectralAmplitude(jsa.grid_i, jsa.grid_s, np.ascontiguousarray(jsa.values.T))


def _realize(values: np.ndarray) -> np.ndarray:
    if np.max(np.abs(values.imag)) > _REALNESS_ATOL:
        raise ValueError("two-photon Wigner slice came out complex")
    return values.real


def two_photon_wigner_slice(
    jsa: JointSpectralAmplitude,
    *,
    omega_s: float | None = None,
    t_s: float | None = None,
    omega_i: float | None = None,
    t_i: float | None = None,
) -> WignerSlice:
    """Cut the four-argument Wigner function at exactly two fixed arguments.

    Fixed frequencies snap to the nearest grid bin; fixed times may be any
    real number.  The free frequency axis is the grid axis; the free time
    axis is the half-step map axis.  Rows of the result run over the signal
    photon's free variable, columns over the idler's.
    """
    fixed = {
        name: value
        for name, value in (
            ("omega_s", omega_s),
            ("t_s", t_s),
            ("omega_i", omega_i),
            ("t_i", t_i),
        )
        if value is not None
    }
    if len(fixed) != 2:
        raise ValueError(f"exactly two arguments must be fixed, got {sorted(fixed)}")
    kind = frozenset(fixed)

    grid_s, grid_i = jsa.grid_s, jsa.grid_i
    if kind == frozenset(("t_s", "t_i")):
        vals = _realize(_slice_frequency_plane(jsa, fixed["t_s"], fixed["t_i"]))
        return WignerSlice(
            "omega_s", "omega_i", grid_s.omega_axis, grid_i.omega_axis, vals, fixed
        )
    if kind == frozenset(("omega_s", "omega_i")):
        m_s = _snap_index(grid_s, fixed["omega_s"])
        m_i = _snap_index(grid_i, fixed["omega_i"])
        vals = _realize(_slice_time_plane(jsa, m_s, m_i))
        return WignerSlice("t_s", "t_i", _tau_axis(grid_s), _tau_axis(grid_i), vals, fixed)
    if kind == frozenset(("omega_s", "t_s")):
        m_s = _snap_index(grid_s, fixed["omega_s"])
        vals = _realize(_slice_same_photon(jsa, m_s, fixed["t_s"]))
        return WignerSlice("omega_i", "t_i", grid_i.omega_axis, _tau_axis(grid_i), vals, fixed)
    if kind == frozenset(("omega_i", "t_i")):
        m_i = _snap_index(grid_i, fixed["omega_i"])
        # swapping arms puts the fixed pair on the signal side; the resulting
        # rows already run over the original signal frequency
        vals = _realize(_slice_same_photon(_swap_arms(jsa), m_i, fixed["t_i"]))
        return WignerSlice("omega_s", "t_s", grid_s.omega_axis, _tau_axis(grid_s), vals, fixed)
    if kind == frozenset(("omega_s", "t_i")):
        m_s = _snap_index(grid_s, fixed["omega_s"])
        vals = _realize(_slice_cross(jsa, m_s, fixed["t_i"]))
        return WignerSlice("t_s", "omega_i", _tau_axis(grid_s), grid_i.omega_axis, vals, fixed)
    # remaining combination: fixed (omega_i, t_s)
    m_i = _snap_index(grid_i, fixed["omega_i"])
    vals = _realize(_slice_cross(_swap_arms(jsa), m_i, fixed["t_s"])).T
    return WignerSlice("omega_s", "t_i", grid_s.omega_axis, _tau_axis(grid_i), vals, fixed)


# ----------------------------- joint intensities -----------------------------


def joint_spectral_intensity(jsa: JointSpectralAmplitude) -> np.ndarray:
    """``|J|^2`` over (signal frequency, idler frequency)."""
    return np.abs(jsa.values) ** 2


def joint_temporal_intensity(jsa: JointSpectralAmplitude) -> np.ndarray:
    """Squared modulus of the two-axis time-domain amplitude."""
    from .states import joint_temporal_amplitude

    return np.abs(joint_temporal_amplitude(jsa)) ** 2


def mixed_intensity(jsa: JointSpectralAmplitude, time_arm: str) -> np.ndarray:
    """Joint intensity with one arm in the time domain.

    ``time_arm`` is "signal" (rows become signal time) or "idler" (columns
    become idler time).
    """
    from .grid import spectral_to_temporal

    if time_arm == "signal":
        amp = spectral_to_temporal(jsa.values, jsa.grid_s, axis=0)
    elif time_arm == "idler":
        amp = spectral_to_temporal(jsa.values, jsa.grid_i, axis=1)
    else:
        raise ValueError(f"time_arm must be 'signal' or 'idler', got {time_arm!r}")
    return np.abs(amp) ** 2


# ----------------------------- two-photon interference -----------------------------


def hom_coincidence(jsa: JointSpectralAmplitude, delays: np.ndarray | None = None):
    """Coincidence probability after interfering both photons with a delay.

    Returns ``(delays, probability)``.  The default delay axis has 201 points
    spanning five times the wider photon's temporal width.  Requires both
    photons on the same grid (the interference overlaps their amplitudes).
    """
    if jsa.grid_s != jsa.grid_i:
        raise GridMismatchError("two-photon interference requires a shared grid")
    ensure_support(jsa, where="hom_coincidence")
    grid = jsa.grid_s
    if delays is None:
        intensity = joint_temporal_intensity(jsa)
        axis = grid.time_axis
        widths = []
        for marg in (intensity.sum(axis=1), intensity.sum(axis=0)):
            total = np.sum(marg)
            mean = np.sum(axis * marg) / total
            widths.append(math.sqrt(np.sum((axis - mean) ** 2 * marg) / total))
        span = 5.0 * max(widths)
        delays = np.linspace(-span, span, 201)
    else:
        delays = np.asarray(delays, dtype=np.float64)
        if delays.ndim != 1 or delays.size == 0:
            raise ValueError("delays must be a non-empty 1D array")

    exchange = jsa.values * np.conj(jsa.values.T)
    diag_sums = lag_sums(exchange)
    lags = np.arange(-(grid.n_points - 1), grid.n_points)
    phases = np.exp(1j * np.outer(delays, lags * grid.spacing))
    overlap = grid.spacing**2 * (phases @ diag_sums)
    prob = 0.5 * (1.0 - overlap.real)
    if np.min(prob) < -1e-9 or np.max(prob) > 1.0 + 1e-9:
        raise ValueError("coincidence probability left [0, 1]; input is not a valid state")
    return delays, np.clip(prob, 0.0, 1.0)


def hom_witness(delays: np.ndarray, probability: np.ndarray, atol: float = 1e-6):
    """Beating-the-classical-bound check on a coincidence trace.

    Returns ``(witness, max_probability, delay_at_max)``; the witness is True
    when the trace exceeds 1/2 beyond ``atol``, which separable exchange
    symmetry cannot do.
    """
    idx = int(np.argmax(probability))
    peak = float(probability[idx])
    return peak > 0.5 + atol, peak, float(delays[idx])
