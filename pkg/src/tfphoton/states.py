"""Single-photon spectral states, density matrices and two-photon amplitudes.

All amplitudes are measure-normalized: a spectral amplitude satisfies
``sum_k |S(w_k)|^2 * spacing == 1``, a joint amplitude
``sum |J|^2 * spacing_s * spacing_i == 1`` and a density matrix
``trace(rho) * spacing == 1``.  Inner products and moments always carry the
grid spacing as the integration measure (midpoint quadrature).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import GridMismatchError, SupportGuardError
from .grid import (
    GUARD_MASS_LIMIT,
    FrequencyGrid,
    centered_dft,
    make_grid,
    outside_window_fraction,
    spectral_to_temporal,
    temporal_to_spectral,
)

# Tolerance on the measure-weighted norm of anything claiming to be normalized.
NORM_ATOL = 1e-10


def _as_complex(values) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(values, dtype=np.complex128))


@dataclass(frozen=True)
class SpectralAmplitude:
    """Pure single-photon state as a spectral amplitude on a grid.

    ``values[k]`` is the amplitude at detuning ``grid.omega_axis[k]``; the
    constructor rejects arrays that are not measure-normalized.  Use
    :func:`spectral_amplitude` to build one from unnormalized samples.
    """

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        arr = _as_complex(self.values)
        if arr.ndim != 1 or arr.shape[0] != self.grid.n_points:
            raise ValueError(
                f"values must be a 1D array of length {self.grid.n_points}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("values contain non-finite entries")
        norm = np.sum(np.abs(arr) ** 2) * self.grid.spacing
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"state is not normalized: sum |S|^2 spacing = {norm!r}")
        object.__setattr__(self, "values", arr)

    def to_time_domain(self) -> np.ndarray:
        """Temporal amplitude on ``grid.time_axis`` (measure-normalized)."""
        return spectral_to_temporal(self.values, self.grid)


def spectral_amplitude(grid: FrequencyGrid, values) -> SpectralAmplitude:
    """Normalize raw spectral samples into a :class:`SpectralAmplitude`."""
    arr = _as_complex(values)
    norm = math.sqrt(np.sum(np.abs(arr) ** 2) * grid.spacing)
    if norm < 1e-12:
        raise ValueError("cannot normalize a (numerically) zero amplitude")
    return SpectralAmplitude(grid, arr / norm)


def from_time_domain(grid: FrequencyGrid, temporal_values) -> SpectralAmplitude:
    """Inverse of :meth:`SpectralAmplitude.to_time_domain`."""
    return SpectralAmplitude(grid, temporal_to_spectral(_as_complex(temporal_values), grid))


# ----------------------------- support guard -----------------------------


def _temporal_profile_of_density(rho: np.ndarray) -> np.ndarray:
    # diag(Phi rho Phi^dagger): transform axis 0 by Phi and axis 1 by conj(Phi).
    half = centered_dft(rho, axis=0)
    full = np.conj(centered_dft(np.conj(half), axis=1))
    return np.abs(np.real(np.diagonal(full)))


def ensure_support(state, margin: float = 1.0, where: str = "") -> None:
    """Raise :class:`SupportGuardError` if mass leaks outside the guarded window.

    Checks the frequency and time profiles of every photon involved; the
    window half-width is ``0.4 * N / margin`` bins (margin sqrt(2) is used by
    operations that are about to rotate support by 45 degrees).
    """
    label = f"{where}: " if where else ""
    profiles = []
    if isinstance(state, SpectralAmplitude):
        profiles.append(("frequency", np.abs(state.values) ** 2))
        profiles.append(("time", np.abs(centered_dft(state.values)) ** 2))
    elif isinstance(state, SpectralDensityMatrix):
        profiles.append(("frequency", np.abs(np.real(np.diagonal(state.matrix)))))
        profiles.append(("time", _temporal_profile_of_density(state.matrix)))
    elif isinstance(state, JointSpectralAmplitude):
        j2 = np.abs(state.values) ** 2
        profiles.append(("signal frequency", j2.sum(axis=1)))
        profiles.append(("idler frequency", j2.sum(axis=0)))
        profiles.append(("signal time", (np.abs(centered_dft(state.values, axis=0)) ** 2).sum(axis=1)))
        profiles.append(("idler time", (np.abs(centered_dft(state.values, axis=1)) ** 2).sum(axis=0)))
    else:
        raise TypeError(f"unsupported state type {type(state).__name__}")
    for axis_name, weights in profiles:
        fraction = outside_window_fraction(weights, margin=margin)
        if fraction > GUARD_MASS_LIMIT:
            raise SupportGuardError(
                f"{label}{fraction:.3e} of the probability mass lies outside the guarded "
                f"central window of the {axis_name} axis (limit {GUARD_MASS_LIMIT:g}, "
                f"margin {margin:g})"
            )


# ----------------------------- constructors -----------------------------


def gaussian_state(
    grid: FrequencyGrid, center: float = 0.0, width: float = 1.0, chirp: float = 0.0
) -> SpectralAmplitude:
    """Gaussian spectral amplitude with optional quadratic spectral phase.

    ``S(w) ~ exp(-(w-center)^2 / (4*width^2) + 1j*chirp*(w-center)^2)``, so
    ``width`` is the standard deviation of the spectral intensity.  Raises
    :class:`SupportGuardError` when the 4-sigma window exits the grid.
    """
    if not (width > 0 and math.isfinite(width)):
        raise ValueError(f"width must be positive, got {width!r}")
    axis = grid.omega_axis
    if center - 4 * width < axis[0] or center + 4 * width > axis[-1]:
        raise SupportGuardError(
            f"gaussian_state: the 4-sigma window [{center - 4 * width:g}, {center + 4 * width:g}] "
            f"exits the grid span [{axis[0]:g}, {axis[-1]:g}]"
        )
    d = axis - center
    return spectral_amplitude(grid, np.exp(-(d**2) / (4.0 * width**2) + 1j * chirp * d**2))


def superposition(a: complex, psi1: SpectralAmplitude, b: complex, psi2: SpectralAmplitude) -> SpectralAmplitude:
    """Normalized superposition ``a*psi1 + b*psi2`` (states on the same grid)."""
    if psi1.grid != psi2.grid:
        raise GridMismatchError("superposition requires both states on the same grid")
    try:
        return spectral_amplitude(psi1.grid, a * psi1.values + b * psi2.values)
    except ValueError:
        raise ValueError("superposition is (numerically) zero; cannot normalize") from None


class Moments(NamedTuple):
    mean_omega: float
    delta_omega: float
    mean_time: float
    delta_time: float


def moments(state: SpectralAmplitude) -> Moments:
    """Centroids and standard deviations of the spectral and temporal intensities."""
    ensure_support(state, where="moments")
    grid = state.grid
    pw = np.abs(state.values) ** 2 * grid.spacing
    mean_w = float(np.sum(grid.omega_axis * pw))
    var_w = float(np.sum((grid.omega_axis - mean_w) ** 2 * pw))
    pt = np.abs(state.to_time_domain()) ** 2 * grid.dt
    mean_t = float(np.sum(grid.time_axis * pt))
    var_t = float(np.sum((grid.time_axis - mean_t) ** 2 * pt))
    return Moments(mean_w, math.sqrt(max(var_w, 0.0)), mean_t, math.sqrt(max(var_t, 0.0)))


def fidelity(psi: SpectralAmplitude, phi: SpectralAmplitude) -> float:
    """``|<psi|phi>|^2`` with the grid spacing as measure."""
    if psi.grid != phi.grid:
        raise GridMismatchError("fidelity requires both states on the same grid")
    overlap = np.sum(np.conj(psi.values) * phi.values) * psi.grid.spacing
    return float(np.abs(overlap) ** 2)


# ----------------------------- density matrices -----------------------------


@dataclass(frozen=True)
class SpectralDensityMatrix:
    """Single-photon density matrix, ``matrix[a, b] = <w_a| rho |w_b>``.

    Hermitian to 1e-12, positive semidefinite up to rounding, and
    ``trace * spacing == 1`` within 1e-10.  Positivity is a maintained
    invariant of the constructors (`to_density`, `mix`), not re-checked on
    every instantiation.
    """

    grid: FrequencyGrid
    matrix: np.ndarray

    def __post_init__(self):
        arr = _as_complex(self.matrix)
        n = self.grid.n_points
        if arr.shape != (n, n):
            raise ValueError(f"matrix must have shape ({n}, {n}), got {arr.shape}")
        if not np.allclose(arr, arr.conj().T, atol=1e-12, rtol=0.0):
            raise ValueError("matrix is not Hermitian to 1e-12")
        tr = float(np.real(np.trace(arr))) * self.grid.spacing
        if abs(tr - 1.0) > NORM_ATOL:
            raise ValueError(f"trace * spacing must be 1, got {tr!r}")
        object.__setattr__(self, "matrix", arr)


def to_density(psi: SpectralAmplitude) -> SpectralDensityMatrix:
    """Rank-one projector onto ``psi``."""
    return SpectralDensityMatrix(psi.grid, np.outer(psi.values, np.conj(psi.values)))


def mix(weights, states) -> SpectralDensityMatrix:
    """Convex mixture of pure states on a common grid."""
    weights = np.asarray(weights, dtype=np.float64)
    states = list(states)
    if len(weights) != len(states) or len(states) == 0:
        raise ValueError("mix needs one weight per state and at least one state")
    if np.any(weights < -1e-12):
        raise ValueError("mixture weights must be nonnegative")
    if abs(float(np.sum(weights)) - 1.0) > NORM_ATOL:
        raise ValueError(f"mixture weights must sum to 1, got {float(np.sum(weights))!r}")
    grid = states[0].grid
    if any(s.grid != grid for s in states):
        raise GridMismatchError("mix requires all states on the same grid")
    acc = np.zeros((grid.n_points, grid.n_points), dtype=np.complex128)
    for w, s in zip(weights, states):
        acc += w * np.outer(s.values, np.conj(s.values))
    # Symmetrize away rounding so the constructor's Hermiticity check is exact.
    acc = 0.5 * (acc + acc.conj().T)
    return SpectralDensityMatrix(grid, acc)


def purity(rho: SpectralDensityMatrix) -> float:
    """``trace(rho^2) * spacing^2``; 1 for pure states."""
    return float(np.sum(np.abs(rho.matrix) ** 2)) * rho.grid.spacing**2


# ----------------------------- two-photon amplitudes -----------------------------


@dataclass(frozen=True)
class JointSpectralAmplitude:
    """Two-photon joint spectral amplitude, ``values[k_s, k_i]`` row-major.

    Row index runs over the signal grid, column index over the idler grid;
    measure-normalized against ``spacing_s * spacing_i``.
    """

    grid_s: FrequencyGrid
    grid_i: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        arr = _as_complex(self.values)
        shape = (self.grid_s.n_points, self.grid_i.n_points)
        if arr.shape != shape:
            raise ValueError(f"values must have shape {shape}, got {arr.shape}")
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError("values contain non-finite entries")
        norm = np.sum(np.abs(arr) ** 2) * self.grid_s.spacing * self.grid_i.spacing
        if abs(norm - 1.0) > NORM_ATOL:
            raise ValueError(f"joint amplitude is not normalized: {norm!r}")
        object.__setattr__(self, "values", arr)


def joint_spectral_amplitude(grid_s, grid_i, values) -> JointSpectralAmplitude:
    """Normalize raw joint samples into a :class:`JointSpectralAmplitude`."""
    arr = _as_complex(values)
    norm = math.sqrt(np.sum(np.abs(arr) ** 2) * grid_s.spacing * grid_i.spacing)
    if norm < 1e-12:
        raise ValueError("cannot normalize a (numerically) zero joint amplitude")
    return JointSpectralAmplitude(grid_s, grid_i, arr / norm)


def product_jsa(psi_s: SpectralAmplitude, psi_i: SpectralAmplitude) -> JointSpectralAmplitude:
    """Separable two-photon state ``J = psi_s (x) psi_i``."""
    return JointSpectralAmplitude(psi_s.grid, psi_i.grid, np.outer(psi_s.values, psi_i.values))


def jsa_marginals(jsa: JointSpectralAmplitude) -> tuple[np.ndarray, np.ndarray]:
    """Single-photon spectral intensity profiles (signal, idler).

    Each integrates to 1 against its own grid spacing.
    """
    j2 = np.abs(jsa.values) ** 2
    return j2.sum(axis=1) * jsa.grid_i.spacing, j2.sum(axis=0) * jsa.grid_s.spacing


def joint_temporal_amplitude(jsa: JointSpectralAmplitude) -> np.ndarray:
    """Both axes transformed to the time domain (measure factors included)."""
    half = spectral_to_temporal(jsa.values, jsa.grid_s, axis=0)
    return spectral_to_temporal(half, jsa.grid_i, axis=1)


# ----------------------------- JSON import/export -----------------------------


def _grid_to_dict(grid: FrequencyGrid) -> dict:
    return {"n_points": grid.n_points, "spacing": grid.spacing, "center": grid.center}


def _grid_from_dict(d: dict, where: str) -> FrequencyGrid:
    if set(d) != {"n_points", "spacing", "center"}:
        raise ValueError(f"{where}: grid object must have exactly n_points/spacing/center")
    return make_grid(int(d["n_points"]), float(d["spacing"]), float(d["center"]))


def state_to_json_dict(state: SpectralAmplitude) -> dict:
    """Serializable form: grid parameters plus parallel re/im lists."""
    return {
        "grid": _grid_to_dict(state.grid),
        "re": state.values.real.tolist(),
        "im": state.values.imag.tolist(),
    }


def state_from_json_dict(data: dict) -> SpectralAmplitude:
    if not isinstance(data, dict) or set(data) != {"grid", "re", "im"}:
        raise ValueError("state JSON must have exactly the keys grid/re/im")
    grid = _grid_from_dict(data["grid"], "state JSON")
    re = np.asarray(data["re"], dtype=np.float64)
    im = np.asarray(data["im"], dtype=np.float64)
    if re.shape != (grid.n_points,) or im.shape != (grid.n_points,):
        raise ValueError("state JSON re/im lengths do not match the grid")
    values = re + 1j * im
    norm = np.sum(np.abs(values) ** 2) * grid.spacing
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"state JSON is not normalized (sum |S|^2 spacing = {norm!r})")
    return spectral_amplitude(grid, values)


def jsa_to_json_dict(jsa: JointSpectralAmplitude) -> dict:
    """Serializable form; values flattened row-major (signal index outer)."""
    return {
        "grid_s": _grid_to_dict(jsa.grid_s),
        "grid_i": _grid_to_dict(jsa.grid_i),
        "layout": "row-major-signal-idler",
        "re": jsa.values.real.ravel().tolist(),
        "im": jsa.values.imag.ravel().tolist(),
    }


def jsa_from_json_dict(data: dict) -> JointSpectralAmplitude:
    expected = {"grid_s", "grid_i", "layout", "re", "im"}
    if not isinstance(data, dict) or set(data) != expected:
        raise ValueError("joint-amplitude JSON must have exactly the keys grid_s/grid_i/layout/re/im")
    if data["layout"] != "row-major-signal-idler":
        raise ValueError(f"unsupported layout {data['layout']!r}")
    grid_s = _grid_from_dict(data["grid_s"], "joint JSON")
    grid_i = _grid_from_dict(data["grid_i"], "joint JSON")
    shape = (grid_s.n_points, grid_i.n_points)
    re = np.asarray(data["re"], dtype=np.float64).reshape(shape)
    im = np.asarray(data["im"], dtype=np.float64).reshape(shape)
    values = re + 1j * im
    norm = np.sum(np.abs(values) ** 2) * grid_s.spacing * grid_i.spacing
    if abs(norm - 1.0) > 1e-6:
        raise ValueError(f"joint-amplitude JSON is not normalized ({norm!r})")
    return joint_spectral_amplitude(grid_s, grid_i, values)
