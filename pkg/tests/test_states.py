import math

import numpy as np
import pytest

from tfphoton.errors import GridMismatchError, SupportGuardError
from tfphoton.grid import make_grid
from tfphoton.states import (
    JointSpectralAmplitude,
    SpectralAmplitude,
    SpectralDensityMatrix,
    ensure_support,
    fidelity,
    from_time_domain,
    gaussian_state,
    jsa_from_json_dict,
    jsa_marginals,
    jsa_to_json_dict,
    mix,
    moments,
    product_jsa,
    purity,
    spectral_amplitude,
    state_from_json_dict,
    state_to_json_dict,
    superposition,
    to_density,
)

GRID = make_grid(256, 0.08)


def test_gaussian_state_is_normalized():
    psi = gaussian_state(GRID, center=0.5, width=1.1, chirp=0.3)
    assert np.sum(np.abs(psi.values) ** 2) * GRID.spacing == pytest.approx(1.0, abs=1e-12)


def test_constructor_rejects_unnormalized():
    with pytest.raises(ValueError, match="not normalized"):
        SpectralAmplitude(GRID, np.ones(GRID.n_points))


def test_moments_of_plain_gaussian():
    psi = gaussian_state(GRID, center=0.3, width=1.2)
    m = moments(psi)
    assert m.mean_omega == pytest.approx(0.3, abs=1e-8)
    assert m.delta_omega == pytest.approx(1.2, abs=1e-6)
    assert m.mean_time == pytest.approx(0.0, abs=1e-8)
    # transform-limited: delta_t = 1/(2*delta_w), product exactly 1/2
    assert m.delta_time == pytest.approx(1.0 / 2.4, abs=1e-6)
    assert m.delta_omega * m.delta_time == pytest.approx(0.5, abs=1e-6)


def test_moments_of_chirped_gaussian():
    # time width of exp(-w^2/(4 s^2) + i c w^2) is sqrt(1/(4 s^2) + 4 c^2 s^2)
    s, c = 1.0, 0.5
    psi = gaussian_state(GRID, center=0.0, width=s, chirp=c)
    m = moments(psi)
    assert m.delta_omega == pytest.approx(s, abs=1e-6)
    assert m.delta_time == pytest.approx(math.sqrt(1.0 / (4 * s**2) + 4 * c**2 * s**2), abs=1e-6)


def test_time_domain_gaussian_matches_analytic():
    s = 1.0
    psi = gaussian_state(GRID, width=s)
    st = 1.0 / (2.0 * s)
    expected = (2 * math.pi * st**2) ** (-0.25) * np.exp(-GRID.time_axis**2 / (4 * st**2))
    assert np.allclose(psi.to_time_domain(), expected, atol=1e-10)
    back = from_time_domain(GRID, psi.to_time_domain())
    assert np.allclose(back.values, psi.values, atol=1e-12)


def test_gaussian_four_sigma_window_guard():
    with pytest.raises(SupportGuardError, match="4-sigma"):
        gaussian_state(GRID, center=8.0, width=1.0)
    with pytest.raises(SupportGuardError):
        gaussian_state(GRID, width=4.0)


def test_moments_guard_trips_on_wide_state():
    w = GRID.omega_axis
    wide = spectral_amplitude(GRID, np.exp(-(w**2) / (4 * 5.0**2)))
    with pytest.raises(SupportGuardError):
        moments(wide)


def test_ensure_support_margin():
    psi = gaussian_state(GRID, center=5.5, width=0.5)
    ensure_support(psi)  # fine at margin 1
    with pytest.raises(SupportGuardError):
        ensure_support(psi, margin=math.sqrt(2.0))


def test_superposition_and_fidelity():
    a = gaussian_state(GRID, center=-3.0, width=0.4)
    b = gaussian_state(GRID, center=3.0, width=0.4)
    cat = superposition(1.0, a, 1.0, b)
    assert np.sum(np.abs(cat.values) ** 2) * GRID.spacing == pytest.approx(1.0, abs=1e-12)
    # far-separated peaks: halves carry half the probability each
    assert fidelity(cat, a) == pytest.approx(0.5, abs=1e-6)
    assert fidelity(a, a) == pytest.approx(1.0, abs=1e-12)
    assert fidelity(a, b) < 1e-12


def test_superposition_zero_norm_error():
    a = gaussian_state(GRID, width=1.0)
    with pytest.raises(ValueError, match="zero"):
        superposition(1.0, a, -1.0, a)


def test_superposition_grid_mismatch():
    a = gaussian_state(GRID, width=1.0)
    b = gaussian_state(make_grid(128, 0.1), width=1.0)
    with pytest.raises(GridMismatchError):
        superposition(1.0, a, 1.0, b)
    with pytest.raises(GridMismatchError):
        fidelity(a, b)


def test_density_and_purity():
    a = gaussian_state(GRID, center=-3.0, width=0.4)
    b = gaussian_state(GRID, center=3.0, width=0.4)
    rho_pure = to_density(a)
    assert purity(rho_pure) == pytest.approx(1.0, abs=1e-10)
    rho_mixed = mix([0.5, 0.5], [a, b])
    # equal mixture of (numerically) orthogonal states
    assert purity(rho_mixed) == pytest.approx(0.5, abs=1e-9)
    evals = np.linalg.eigvalsh(rho_mixed.matrix)
    assert evals.min() > -1e-10


def test_mix_validation():
    a = gaussian_state(GRID, width=1.0)
    with pytest.raises(ValueError, match="sum to 1"):
        mix([0.7, 0.7], [a, a])
    with pytest.raises(ValueError, match="nonnegative"):
        mix([1.5, -0.5], [a, a])
    b = gaussian_state(make_grid(128, 0.1), width=1.0)
    with pytest.raises(GridMismatchError):
        mix([0.5, 0.5], [a, b])


def test_density_constructor_validation():
    n = GRID.n_points
    bad = np.eye(n, dtype=complex)
    bad[0, 1] = 1.0  # not Hermitian
    with pytest.raises(ValueError, match="Hermitian"):
        SpectralDensityMatrix(GRID, bad)
    with pytest.raises(ValueError, match="trace"):
        SpectralDensityMatrix(GRID, np.eye(n, dtype=complex))


def test_product_jsa_and_marginals():
    s = gaussian_state(GRID, center=1.0, width=0.7)
    i = gaussian_state(GRID, center=-1.0, width=0.5)
    jsa = product_jsa(s, i)
    ms, mi = jsa_marginals(jsa)
    assert np.sum(ms) * GRID.spacing == pytest.approx(1.0, abs=1e-10)
    assert np.sum(mi) * GRID.spacing == pytest.approx(1.0, abs=1e-10)
    assert np.allclose(ms, np.abs(s.values) ** 2, atol=1e-12)
    assert np.allclose(mi, np.abs(i.values) ** 2, atol=1e-12)


def test_jsa_constructor_rejects_unnormalized():
    n = GRID.n_points
    with pytest.raises(ValueError, match="not normalized"):
        JointSpectralAmplitude(GRID, GRID, np.ones((n, n)))


def test_state_json_round_trip():
    psi = gaussian_state(GRID, center=0.4, width=0.9, chirp=-0.2)
    d = state_to_json_dict(psi)
    back = state_from_json_dict(d)
    assert back.grid == psi.grid
    assert np.allclose(back.values, psi.values, atol=1e-12)


def test_state_json_validation():
    psi = gaussian_state(GRID, width=1.0)
    d = state_to_json_dict(psi)
    d["extra"] = 1
    with pytest.raises(ValueError, match="exactly the keys"):
        state_from_json_dict(d)
    d2 = state_to_json_dict(psi)
    d2["re"] = [2 * x for x in d2["re"]]
    with pytest.raises(ValueError, match="not normalized"):
        state_from_json_dict(d2)


def test_jsa_json_round_trip():
    s = gaussian_state(GRID, center=1.0, width=0.7)
    i = gaussian_state(GRID, center=-1.0, width=0.5)
    jsa = product_jsa(s, i)
    back = jsa_from_json_dict(jsa_to_json_dict(jsa))
    assert back.grid_s == jsa.grid_s and back.grid_i == jsa.grid_i
    assert np.allclose(back.values, jsa.values, atol=1e-12)
    bad = jsa_to_json_dict(jsa)
    bad["layout"] = "column-major"
    with pytest.raises(ValueError, match="layout"):
        jsa_from_json_dict(bad)
