"""Two-photon sources: correlated Gaussian amplitudes, pump x phasematching."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .grid import FrequencyGrid
from .states import JointSpectralAmplitude, ensure_support


@dataclass(frozen=True)
class GaussianJsaSpec:
    """Correlated Gaussian amplitude in the rotated +/- detuning frame.

    ``delta_plus`` is the width along the symmetric combination of the two
    detunings (set by the pump bandwidth), ``delta_minus`` the width along the
    antisymmetric one (set by phasematching).  Equal widths give a product
    state; the width ratio alone fixes the entanglement.
    """

    delta_plus: float
    delta_minus: float
    center_s: float = 0.0
    center_i: float = 0.0

    def __post_init__(self):
        for name in ("delta_plus", "delta_minus"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive finite number, got {value!r}")
        for name in ("center_s", "center_i"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite number, got {value!r}")


def gaussian_jsa(
    grid_s: FrequencyGrid, grid_i: FrequencyGrid, spec: GaussianJsaSpec
) -> JointSpectralAmplitude:
    """Normalized real positive Gaussian joint amplitude for ``spec``.

    The amplitude is ``exp(-w_plus^2 / (4 delta_plus^2) - w_minus^2 /
    (4 delta_minus^2))`` with ``w_pm = (detuning_s ± detuning_i) / sqrt(2)``;
    any phasematching phase is dropped (flat-phase convention), so the
    Schmidt basis is real.
    """
    ws = (grid_s.omega_axis - spec.center_s)[:, None]
    wi = (grid_i.omega_axis - spec.center_i)[None, :]
    inv_sq2 = 1.0 / math.sqrt(2.0)
    w_plus = (ws + wi) * inv_sq2
    w_minus = (ws - wi) * inv_sq2
    log_amp = -(w_plus**2) / (4.0 * spec.delta_plus**2) - (w_minus**2) / (
        4.0 * spec.delta_minus**2
    )
    values = np.exp(log_amp).astype(np.complex128)
    norm = math.sqrt(np.sum(np.abs(values) ** 2) * grid_s.spacing * grid_i.spacing)
    out = JointSpectralAmplitude(grid_s, grid_i, values / norm)
    ensure_support(out, where="gaussian_jsa")
    return out


def jsa_from_pump_phasematching(
    grid_s: FrequencyGrid,
    grid_i: FrequencyGrid,
    pump: Callable[[np.ndarray], np.ndarray],
    phasematch: Callable[[np.ndarray], np.ndarray],
) -> JointSpectralAmplitude:
    """Joint amplitude ``pump(w_s + w_i) * phasematch(w_s - w_i)``, normalized.

    ``pump`` and ``phasematch`` map detuning arrays to (complex) amplitudes.
    Raises ``ValueError`` when the product has zero norm on the grid.
    """
    ws = grid_s.omega_axis[:, None]
    wi = grid_i.omega_axis[None, :]
    factors = []
    for name, func, arg in (("pump", pump, ws + wi), ("phasematch", phasematch, ws - wi)):
        arr = np.asarray(func(arg), dtype=np.complex128)
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise ValueError(f"{name} produced non-finite values")
        factors.append(np.broadcast_to(arr, (grid_s.n_points, grid_i.n_points)))
    values = factors[0] * factors[1]
    norm_sq = np.sum(np.abs(values) ** 2) * grid_s.spacing * grid_i.spacing
    if norm_sq < 1e-24:
        raise ValueError("pump x phasematching has zero norm on this grid")
    out = JointSpectralAmplitude(grid_s, grid_i, values / math.sqrt(norm_sq))
    ensure_support(out, where="jsa_from_pump_phasematching")
    return out
