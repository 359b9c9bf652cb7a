import math

import numpy as np
import pytest

from tfphoton.grid import (
    balanced_grid,
    centered_dft,
    centered_idft,
    make_grid,
    outside_window_fraction,
    parity_flip,
    spectral_to_temporal,
    temporal_to_spectral,
)


def test_axes_small_grid():
    g = make_grid(8, 1.0)
    assert np.array_equal(g.omega_axis, np.arange(-4.0, 4.0))
    assert g.dt == pytest.approx(2.0 * math.pi / 8.0, rel=1e-15)
    assert np.allclose(g.time_axis, (np.arange(8) - 4) * g.dt)


def test_spacing_dt_product():
    g = make_grid(512, 0.05)
    assert g.dt == pytest.approx(0.2454369260617026, rel=1e-14)
    assert g.spacing * g.dt == pytest.approx(2.0 * math.pi / 512, rel=1e-14)


@pytest.mark.parametrize("n", [0, 4, 7, 510, 513])
def test_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        make_grid(n, 1.0)


@pytest.mark.parametrize("spacing", [0.0, -1.0, float("nan"), float("inf")])
def test_rejects_bad_spacing(spacing):
    with pytest.raises(ValueError):
        make_grid(64, spacing)


def test_balanced_grid_spacings_match():
    g = balanced_grid(256)
    assert g.spacing == pytest.approx(g.dt, rel=1e-14)


def test_centered_dft_is_unitary():
    rng = np.random.default_rng(11)
    x = rng.normal(size=128) + 1j * rng.normal(size=128)
    y = centered_dft(x)
    assert np.linalg.norm(y) == pytest.approx(np.linalg.norm(x), rel=1e-12)
    assert np.allclose(centered_idft(y), x, atol=1e-12)


def test_centered_dft_squared_is_parity():
    rng = np.random.default_rng(12)
    x = rng.normal(size=64) + 1j * rng.normal(size=64)
    twice = centered_dft(centered_dft(x))
    assert np.allclose(twice, parity_flip(x), atol=1e-12)
    four = centered_dft(centered_dft(twice))
    assert np.allclose(four, x, atol=1e-12)


def test_parity_flip_pairs_indices():
    x = np.arange(8.0)
    flipped = parity_flip(x)
    # bin 0 is self-paired, bin k goes to N-k
    assert flipped[0] == 0.0
    assert np.array_equal(flipped[1:], x[1:][::-1])


def test_physical_transform_matches_brute_force_quadrature():
    # Oracle: direct O(N^2) midpoint sum of the continuum transform kernel.
    g = make_grid(64, 0.25)
    w = g.omega_axis
    s = np.exp(-(w**2) / 4.0) * np.exp(0.3j * w)
    s /= math.sqrt(np.sum(np.abs(s) ** 2) * g.spacing)
    brute = np.array(
        [np.sum(s * np.exp(-1j * w * t)) * g.spacing / math.sqrt(2 * math.pi) for t in g.time_axis]
    )
    fast = spectral_to_temporal(s, g)
    assert np.allclose(fast, brute, atol=1e-12)
    assert np.sum(np.abs(fast) ** 2) * g.dt == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(temporal_to_spectral(fast, g), s, atol=1e-12)


def test_commutator_on_guarded_state():
    # [w, t] acting on a guarded smooth state reproduces i*psi to high accuracy.
    g = balanced_grid(256)
    w = g.omega_axis
    psi = np.exp(-(w**2) / 2.5 + 0.4j * w**2)
    psi /= math.sqrt(np.sum(np.abs(psi) ** 2) * g.spacing)

    def mul_t(vec):
        return temporal_to_spectral(g.time_axis * spectral_to_temporal(vec, g), g)

    resid = w * mul_t(psi) - mul_t(w * psi) - 1j * psi
    norm = math.sqrt(float(np.sum(np.abs(resid) ** 2)) * g.spacing)
    assert norm < 1e-6


def test_outside_window_fraction():
    n = 100
    weights = np.zeros(n)
    weights[n // 2] = 1.0
    assert outside_window_fraction(weights) == 0.0
    weights[2] = 1.0
    assert outside_window_fraction(weights) == pytest.approx(0.5)
    # a bin at 0.35*N from center is inside for margin 1, outside for sqrt(2)
    weights = np.zeros(n)
    weights[n // 2 + 35] = 1.0
    assert outside_window_fraction(weights, margin=1.0) == 0.0
    assert outside_window_fraction(weights, margin=math.sqrt(2.0)) == pytest.approx(1.0)
    assert outside_window_fraction(np.zeros(n)) == 0.0
