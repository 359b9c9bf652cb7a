"""Gate set acting on spectral amplitudes and joint spectral amplitudes.

Sign and phase conventions, fixed here once:

* ``time_displace(s)`` multiplies the spectral amplitude by ``e^{i w s}``; the
  temporal profile moves by ``+s``.
* ``freq_displace(mu)`` moves the spectral profile by ``+mu``, implemented as
  the exact phase ramp ``e^{-i mu t}`` in the time representation (never index
  interpolation; whole-bin shifts reduce to exact rolls).
* Reordering the two displacements costs a phase with slope one:
  ``time_displace(s) ∘ freq_displace(mu) = e^{+i s mu} freq_displace(mu) ∘
  time_displace(s)``; :func:`weyl_phase` measures it.
* ``fourier`` is a quarter turn of the grid-intrinsic balanced phase plane
  (dimensionless axes ``b_k = (k-N/2) sqrt(2pi/N)``) and carries the branch
  phase ``e^{-i pi/4}``, so the fractional family below is additive including
  global phase and ``fourier**4 = -identity``.  On a balanced grid the quarter
  turn exchanges the physical frequency and time axes; on unbalanced grids
  physical-axis identities acquire the axis-scaling factor ``dt/spacing``.
* ``frac_fourier(theta)`` range-reduces by exact DFT powers and applies a
  three-chirp pass for the residual rotation (|residual| <= pi/4), keeping
  every factor exactly unitary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import GridMismatchError
from .grid import FrequencyGrid, centered_dft, centered_idft, parity_flip
from .states import JointSpectralAmplitude, SpectralAmplitude, ensure_support

_HALF_PI = 0.5 * math.pi


def _axis_view(vec: np.ndarray, ndim: int, axis: int) -> np.ndarray:
    shape = [1] * ndim
    shape[axis] = len(vec)
    return vec.reshape(shape)


def _guarded(grid: FrequencyGrid, values: np.ndarray, where: str) -> SpectralAmplitude:
    out = SpectralAmplitude(grid, values)
    ensure_support(out, where=where)
    return out


def _guarded_jsa(jsa: JointSpectralAmplitude, values: np.ndarray, where: str) -> JointSpectralAmplitude:
    out = JointSpectralAmplitude(jsa.grid_s, jsa.grid_i, values)
    ensure_support(out, where=where)
    return out


# ----------------------------- array-level gate actions -----------------------------
# Every single-photon gate is implemented on a raw array along a chosen axis so
# the same code serves 1D states and either arm of a joint amplitude.


def _time_displace_vals(values, grid, axis, s):
    phase = np.exp(1j * grid.omega_axis * s)
    return values * _axis_view(phase, values.ndim, axis)


def _freq_displace_vals(values, grid, axis, mu):
    ramp = np.exp(-1j * mu * grid.time_axis)
    tv = centered_dft(values, axis=axis) * _axis_view(ramp, values.ndim, axis)
    return centered_idft(tv, axis=axis)


def _fourier_vals(values, grid, axis):
    return np.exp(-0.25j * math.pi) * centered_dft(values, axis=axis)


def _fourier_inverse_vals(values, grid, axis):
    return np.exp(0.25j * math.pi) * centered_idft(values, axis=axis)


def _balanced_axis(n: int) -> np.ndarray:
    return (np.arange(n) - n // 2) * math.sqrt(2.0 * math.pi / n)


def _three_chirp_vals(values, axis, theta):
    # Rotation by theta of the balanced plane as chirp / transformed chirp /
    # chirp; equals e^{-i theta (b^2 + conjugate^2)/2} exactly in the continuum
    # limit, with no extra phase, so the reduced family composes cleanly.
    n = values.shape[axis]
    b2 = _balanced_axis(n) ** 2
    outer = _axis_view(np.exp(-0.5j * math.tan(0.5 * theta) * b2), values.ndim, axis)
    middle = _axis_view(np.exp(-0.5j * math.sin(theta) * b2), values.ndim, axis)
    out = outer * values
    out = centered_idft(middle * centered_dft(out, axis=axis), axis=axis)
    return outer * out


def _dft_power_vals(values, axis, power):
    power %= 4
    if power == 0:
        return np.array(values, copy=True)
    if power == 1:
        return centered_dft(values, axis=axis)
    if power == 2:
        return parity_flip(values, axis=axis)
    return centered_idft(values, axis=axis)


def _frac_fourier_vals(values, grid, axis, theta):
    m = round(theta / _HALF_PI)
    residual = theta - m * _HALF_PI
    out = _dft_power_vals(values, axis, m)
    if residual != 0.0:
        out = _three_chirp_vals(out, axis, residual)
    # branch phase: each exact quarter turn contributes e^{-i pi/4}
    return out * np.exp(-0.25j * math.pi * m)


def _quad_phase_vals(values, grid, axis, s):
    phase = np.exp(1j * s * grid.omega_axis**2)
    return values * _axis_view(phase, values.ndim, axis)


def _cubic_phase_vals(values, grid, axis, gamma):
    phase = np.exp(1j * gamma * grid.omega_axis**3)
    return values * _axis_view(phase, values.ndim, axis)


def _diag_phase_vals(values, grid, axis, f):
    phi = np.asarray(f(grid.omega_axis), dtype=np.float64)
    if phi.shape != (grid.n_points,):
        raise ValueError(f"phase function must map the axis to {grid.n_points} reals, got shape {phi.shape}")
    if not np.all(np.isfinite(phi)):
        raise ValueError("phase function produced non-finite values")
    return values * _axis_view(np.exp(1j * phi), values.ndim, axis)


# ----------------------------- single-photon gates -----------------------------


def time_displace(psi: SpectralAmplitude, s: float) -> SpectralAmplitude:
    """Displace the temporal profile by ``s`` (spectral phase ramp ``e^{i w s}``)."""
    return _guarded(psi.grid, _time_displace_vals(psi.values, psi.grid, 0, s), "time_displace")


def freq_displace(psi: SpectralAmplitude, mu: float) -> SpectralAmplitude:
    """Displace the spectral profile by ``mu`` (phase ramp in the time domain)."""
    return _guarded(psi.grid, _freq_displace_vals(psi.values, psi.grid, 0, mu), "freq_displace")


def freq_displace_via_fourier(psi: SpectralAmplitude, mu: float) -> SpectralAmplitude:
    """Second route to :func:`freq_displace`: conjugation by the Fourier gate.

    ``fourier ∘ time_displace(mu * dt/spacing) ∘ fourier^{-1}``; the scaling
    factor is the grid's axis-scaling convention (1 on balanced grids).
    Agrees with the direct route to better than 1e-10 on guarded states.
    """
    inner = time_displace(fourier_inverse(psi), mu * psi.grid.dt / psi.grid.spacing)
    return fourier(inner)


def fourier(psi: SpectralAmplitude) -> SpectralAmplitude:
    """Quarter turn of the balanced phase plane (see module docstring)."""
    return _guarded(psi.grid, _fourier_vals(psi.values, psi.grid, 0), "fourier")


def fourier_inverse(psi: SpectralAmplitude) -> SpectralAmplitude:
    """Inverse quarter turn, ``frac_fourier(-pi/2)``."""
    return _guarded(psi.grid, _fourier_inverse_vals(psi.values, psi.grid, 0), "fourier_inverse")


def frac_fourier(psi: SpectralAmplitude, theta: float) -> SpectralAmplitude:
    """Rotation of the balanced phase plane by any angle ``theta``.

    Additive: ``frac_fourier(a) ∘ frac_fourier(b) == frac_fourier(a+b)``
    including global phase; ``frac_fourier(pi/2)`` equals :func:`fourier`
    exactly by construction.
    """
    return _guarded(psi.grid, _frac_fourier_vals(psi.values, psi.grid, 0, theta), "frac_fourier")


def quad_phase(psi: SpectralAmplitude, s: float) -> SpectralAmplitude:
    """Quadratic spectral phase ``e^{i s w^2}`` on the physical axis."""
    return _guarded(psi.grid, _quad_phase_vals(psi.values, psi.grid, 0, s), "quad_phase")


def cubic_phase(psi: SpectralAmplitude, gamma: float) -> SpectralAmplitude:
    """Cubic spectral phase ``e^{i gamma w^3}``, the non-Gaussian resource gate."""
    return _guarded(psi.grid, _cubic_phase_vals(psi.values, psi.grid, 0, gamma), "cubic_phase")


def diag_phase(psi: SpectralAmplitude, f: Callable[[np.ndarray], np.ndarray]) -> SpectralAmplitude:
    """Arbitrary spectral phase ``e^{i f(w)}``; ``f`` maps the axis array to reals."""
    return _guarded(psi.grid, _diag_phase_vals(psi.values, psi.grid, 0, f), "diag_phase")


def global_phase_between(psi: SpectralAmplitude, phi: SpectralAmplitude) -> float:
    """``arg <psi|phi>``: the global phase by which two states differ.

    Meaningful when the states are equal up to phase; reported separately
    because several gate identities hold only up to this number.
    """
    if psi.grid != phi.grid:
        raise GridMismatchError("states live on different grids")
    return float(np.angle(np.sum(np.conj(psi.values) * phi.values) * psi.grid.spacing))


def weyl_phase(psi: SpectralAmplitude, s: float, mu: float) -> float:
    """Measured reordering phase of the two displacement orders.

    Returns ``arg`` of the overlap between ``freq_displace(mu) ∘
    time_displace(s)`` and ``time_displace(s) ∘ freq_displace(mu)`` applied to
    ``psi``; equals ``s * mu`` (slope one) in this package's convention, valid
    as a phase measurement for ``|s * mu| < pi``.
    """
    a = freq_displace(time_displace(psi, s), mu)
    b = time_displace(freq_displace(psi, mu), s)
    return float(np.angle(np.sum(np.conj(a.values) * b.values) * psi.grid.spacing))


# ----------------------------- two-photon gates -----------------------------


def cond_freq_time(jsa: JointSpectralAmplitude) -> JointSpectralAmplitude:
    """Conditional shift: idler frequency moves down by the signal detuning.

    A product of delta-like lines at ``(w, w')`` maps to ``(w, w' - w)``.
    Implemented as the pointwise phase ``e^{i w_s t_i}`` in the mixed
    signal-frequency / idler-time representation (exact, no interpolation).
    """
    tv = centered_dft(jsa.values, axis=1)
    tv = tv * np.exp(1j * np.outer(jsa.grid_s.omega_axis, jsa.grid_i.time_axis))
    return _guarded_jsa(jsa, centered_idft(tv, axis=1), "cond_freq_time")


def cond_freq_time_via_fourier(jsa: JointSpectralAmplitude) -> JointSpectralAmplitude:
    """Second route: both-frequency phase gate conjugated by the idler Fourier.

    ``F_i^{-1} ∘ e^{i w_s w_i} ∘ F_i``; equals :func:`cond_freq_time` exactly
    when the idler grid is balanced (axis-scaling convention otherwise).
    """
    vals = _fourier_vals(jsa.values, jsa.grid_i, 1)
    vals = vals * np.exp(1j * np.outer(jsa.grid_s.omega_axis, jsa.grid_i.omega_axis))
    vals = _fourier_inverse_vals(vals, jsa.grid_i, 1)
    return _guarded_jsa(jsa, vals, "cond_freq_time_via_fourier")


def _shear_signal_vals(values, grid_s, grid_i, a):
    # J'(x, y) = J(x + a*y, y): per idler column, signal profile shifts by -a*y
    tv = centered_dft(values, axis=0)
    tv = tv * np.exp(1j * a * np.outer(grid_s.time_axis, grid_i.omega_axis))
    return centered_idft(tv, axis=0)


def _shear_idler_vals(values, grid_s, grid_i, b):
    # J'(x, y) = J(x, y + b*x): per signal row, idler profile shifts by -b*x
    tv = centered_dft(values, axis=1)
    tv = tv * np.exp(1j * b * np.outer(grid_s.omega_axis, grid_i.time_axis))
    return centered_idft(tv, axis=1)


def freq_beam_splitter(jsa: JointSpectralAmplitude) -> JointSpectralAmplitude:
    """Balanced frequency beam splitter: 45-degree rotation of the joint plane.

    Output ``J'(u, v) = J((u-v)/sqrt2, (u+v)/sqrt2)``, so the symmetric
    combination of the input detunings lands on the output signal axis.
    Implemented as three exactly-unitary FFT shear passes; requires both
    photons on the same grid and a sqrt(2) support margin on the input.
    """
    if jsa.grid_s != jsa.grid_i:
        raise GridMismatchError("freq_beam_splitter requires both photons on the same grid")
    ensure_support(jsa, margin=math.sqrt(2.0), where="freq_beam_splitter input")
    a = -math.tan(math.pi / 8.0)
    b = math.sin(math.pi / 4.0)
    vals = _shear_signal_vals(jsa.values, jsa.grid_s, jsa.grid_i, a)
    vals = _shear_idler_vals(vals, jsa.grid_s, jsa.grid_i, b)
    vals = _shear_signal_vals(vals, jsa.grid_s, jsa.grid_i, a)
    return _guarded_jsa(jsa, vals, "freq_beam_splitter")


# ----------------------------- circuits -----------------------------

_SINGLE_GATE_PARAMS = {
    "TimeDisplace": ("s",),
    "FreqDisplace": ("mu",),
    "Fourier": (),
    "FracFourier": ("theta",),
    "QuadPhase": ("s",),
    "CubicPhase": ("gamma",),
    "DiagPhase": None,  # special-cased: callable "f" or polynomial "coefficients"
}
_PAIR_GATES = ("CondFreqTime", "FreqBeamSplitter")
GATE_KINDS = tuple(_SINGLE_GATE_PARAMS) + _PAIR_GATES


@dataclass(frozen=True)
class GateDescriptor:
    """One gate instance: kind, numeric parameters and target photon index."""

    kind: str
    params: dict = field(default_factory=dict)
    target: int = 0

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}; valid kinds: {', '.join(GATE_KINDS)}")
        if self.target not in (0, 1):
            raise ValueError(f"gate target must be 0 or 1, got {self.target!r}")
        if self.kind in _PAIR_GATES:
            if self.params:
                raise ValueError(f"{self.kind} takes no parameters")
            return
        if self.kind == "DiagPhase":
            keys = set(self.params)
            if keys == {"f"}:
                if not callable(self.params["f"]):
                    raise ValueError("DiagPhase parameter 'f' must be callable")
            elif keys == {"coefficients"}:
                coeffs = list(self.params["coefficients"])
                if not coeffs or not all(
                    isinstance(x, (int, float)) and math.isfinite(x) for x in coeffs
                ):
                    raise ValueError("DiagPhase coefficients must be a non-empty list of finite reals")
            else:
                raise ValueError("DiagPhase needs exactly one of 'f' (callable) or 'coefficients' (list)")
            return
        expected = _SINGLE_GATE_PARAMS[self.kind]
        if set(self.params) != set(expected):
            raise ValueError(
                f"{self.kind} expects parameters {expected}, got {tuple(sorted(self.params))}"
            )
        for name in expected:
            value = self.params[name]
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ValueError(f"{self.kind} parameter {name!r} must be a finite number")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list with a declared photon arity (1 or 2)."""

    gates: tuple
    arity: int

    def __post_init__(self):
        if self.arity not in (1, 2):
            raise ValueError(f"arity must be 1 or 2, got {self.arity!r}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for i, g in enumerate(self.gates):
            if not isinstance(g, GateDescriptor):
                raise ValueError(f"gate {i} is not a GateDescriptor")
            if g.kind in _PAIR_GATES and self.arity != 2:
                raise ValueError(f"gate {i} ({g.kind}) needs arity 2")
            if g.target >= self.arity:
                raise ValueError(f"gate {i} ({g.kind}) targets photon {g.target} but arity is {self.arity}")


def parse_circuit(entries) -> Circuit:
    """Build a :class:`Circuit` from decoded circuit JSON (a list of objects).

    Each entry is ``{"gate": <kind>, <parameters...>, "target": 0|1}`` with
    the parameter names of :data:`GATE_KINDS`; ``DiagPhase`` uses
    ``"coefficients"`` (polynomial in the detuning).  The arity is inferred
    from the gates present.
    """
    if not isinstance(entries, list):
        raise ValueError("circuit JSON must be a list of gate objects")
    gates = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict) or "gate" not in entry:
            raise ValueError(f"circuit entry {i} must be an object with a 'gate' key")
        rest = dict(entry)
        kind = rest.pop("gate")
        target = rest.pop("target", 0)
        if not isinstance(target, int):
            raise ValueError(f"circuit entry {i}: target must be an integer")
        try:
            gates.append(GateDescriptor(kind, rest, target))
        except ValueError as exc:
            raise ValueError(f"circuit entry {i}: {exc}") from None
    arity = 2 if any(g.kind in _PAIR_GATES or g.target == 1 for g in gates) else 1
    return Circuit(tuple(gates), arity)


def _diag_phase_callable(params):
    if "f" in params:
        return params["f"]
    coeffs = list(params["coefficients"])

    def poly(w):
        acc = np.zeros_like(w, dtype=np.float64)
        for c in reversed(coeffs):
            acc = acc * w + c
        return acc

    return poly


def apply_gate(state, g: GateDescriptor):
    """Apply one gate to a :class:`SpectralAmplitude` or a joint amplitude."""
    single = isinstance(state, SpectralAmplitude)
    if g.kind in _PAIR_GATES:
        if single:
            raise ValueError(f"{g.kind} needs a two-photon state")
        return cond_freq_time(state) if g.kind == "CondFreqTime" else freq_beam_splitter(state)

    if single:
        grid, axis = state.grid, 0
    else:
        if g.target == 0:
            grid, axis = state.grid_s, 0
        else:
            grid, axis = state.grid_i, 1

    kind = g.kind
    if kind == "TimeDisplace":
        vals = _time_displace_vals(state.values, grid, axis, g.params["s"])
    elif kind == "FreqDisplace":
        vals = _freq_displace_vals(state.values, grid, axis, g.params["mu"])
    elif kind == "Fourier":
        vals = _fourier_vals(state.values, grid, axis)
    elif kind == "FracFourier":
        vals = _frac_fourier_vals(state.values, grid, axis, g.params["theta"])
    elif kind == "QuadPhase":
        vals = _quad_phase_vals(state.values, grid, axis, g.params["s"])
    elif kind == "CubicPhase":
        vals = _cubic_phase_vals(state.values, grid, axis, g.params["gamma"])
    elif kind == "DiagPhase":
        vals = _diag_phase_vals(state.values, grid, axis, _diag_phase_callable(g.params))
    else:  # pragma: no cover - guarded by GateDescriptor validation
        raise ValueError(f"unknown gate kind {kind!r}")

    if single:
        return _guarded(grid, vals, kind)
    return _guarded_jsa(state, vals, kind)


def apply_circuit(state, circuit: Circuit):
    """Run a circuit left to right; the first failing gate aborts with its index."""
    single = isinstance(state, SpectralAmplitude)
    needed = 1 if single else 2
    if circuit.arity > needed:
        raise ValueError(f"circuit has arity {circuit.arity} but the state has {needed} photon(s)")
    current = state
    for i, g in enumerate(circuit.gates):
        try:
            current = apply_gate(current, g)
        except (ValueError, GridMismatchError) as exc:
            raise type(exc)(f"gate {i} ({g.kind}): {exc}") from exc
    return current
