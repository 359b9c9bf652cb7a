"""Acceptance gate: one test per criterion, at the stated tolerance.

``pytest -v tests/test_acceptance.py`` prints one PASSED/FAILED line per
criterion.  Each test also prints its measured figure so a failure report
carries the number that missed the bound.
"""

import hashlib
import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from tfphoton.codes import CatCodeSpec, GkpCodeSpec, decode, encode, logical_error_rate
from tfphoton.gates import (
    cond_freq_time,
    cond_freq_time_via_fourier,
    cubic_phase,
    freq_displace,
    time_displace,
    weyl_phase,
)
from tfphoton.grid import balanced_grid, make_grid
from tfphoton.phasespace import displaced_parity, hom_coincidence, hom_witness, wigner
from tfphoton.schmidt import bloch_messiah_separate, schmidt_decompose, schmidt_number
from tfphoton.spdc import GaussianJsaSpec, gaussian_jsa
from tfphoton.states import (
    JointSpectralAmplitude,
    gaussian_state,
    jsa_marginals,
    moments,
    product_jsa,
    superposition,
)

SRC_DIR = Path(__file__).resolve().parents[1] / "src"


def random_packet(grid, rng, chirp_scale=0.3):
    return gaussian_state(
        grid,
        center=rng.uniform(-2.0, 2.0),
        width=rng.uniform(0.8, 1.5),
        chirp=rng.uniform(-chirp_scale, chirp_scale),
    )


def test_criterion_01_displacement_commutator():
    """Time/frequency displacements reorder up to the exact phase e^{i s mu}."""
    grid = make_grid(512, 0.125)
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(20):
        psi = random_packet(grid, rng)
        s = rng.uniform(-2.0, 2.0)
        mu = rng.uniform(-2.0, 2.0)
        lhs = time_displace(freq_displace(psi, mu), s).values
        rhs = np.exp(1j * s * mu) * freq_displace(time_displace(psi, s), mu).values
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    print(f"criterion 01 max commutator defect = {worst:.3e} (tol 1e-6)")
    assert worst <= 1e-6


def test_criterion_02_weyl_phase_slope():
    """The reordering phase equals s*mu to 1e-8 over ten displacement pairs."""
    grid = make_grid(512, 0.125)
    rng = np.random.default_rng(7)
    psi = gaussian_state(grid, center=0.3, width=1.1, chirp=0.1)
    worst = 0.0
    for _ in range(10):
        s = rng.uniform(0.3, 1.5) * rng.choice([-1.0, 1.0])
        mu = rng.uniform(0.3, 1.5) * rng.choice([-1.0, 1.0])
        worst = max(worst, abs(weyl_phase(psi, s, mu) - s * mu))
    print(f"criterion 02 max phase error = {worst:.3e} (tol 1e-8)")
    assert worst <= 1e-8


def test_criterion_03_uncertainty_bound():
    """Spectral/temporal widths obey the lower bound; Gaussians saturate it."""
    grid = balanced_grid(256)
    rng = np.random.default_rng(11)
    smallest = np.inf
    for _ in range(50):
        psi = superposition(
            complex(rng.normal(), rng.normal()),
            random_packet(grid, rng),
            complex(rng.normal(), rng.normal()),
            random_packet(grid, rng),
        )
        m = moments(psi)
        smallest = min(smallest, m.delta_omega * m.delta_time)
    m0 = moments(gaussian_state(grid, width=1.0))
    gauss_product = m0.delta_omega * m0.delta_time
    print(
        f"criterion 03 min product = {smallest:.9f} (bound 0.5 - 1e-6), "
        f"gaussian = {gauss_product:.9f}"
    )
    assert smallest >= 0.5 - 1e-6
    assert abs(gauss_product - 0.5) <= 1e-6


def test_criterion_04_wigner_marginals():
    """Integrating the map over either axis returns the measured intensities."""
    grid = balanced_grid(128)
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(10):
        psi = superposition(
            complex(rng.normal(), rng.normal()),
            random_packet(grid, rng),
            complex(rng.normal(), rng.normal()),
            random_packet(grid, rng),
        )
        wm = wigner(psi)
        freq_marg = wm.values.sum(axis=1) * (grid.dt / 2.0)
        worst = max(worst, float(np.max(np.abs(freq_marg - np.abs(psi.values) ** 2))))
        # continuum transform evaluated on the half-step time lattice
        phases = np.exp(-1j * np.outer(grid.omega_axis, wm.tau_axis))
        amp = grid.spacing / np.sqrt(2.0 * np.pi) * (psi.values @ phases)
        time_marg = wm.values.sum(axis=0) * grid.spacing
        worst = max(worst, float(np.max(np.abs(time_marg - np.abs(amp) ** 2))))
    print(f"criterion 04 max marginal error = {worst:.3e} (tol 1e-8)")
    assert worst <= 1e-8


def test_criterion_05_displaced_parity_identity():
    """pi*W equals the displaced-flip expectation on a 5x5 lattice of points."""
    grid = balanced_grid(128)
    psi = gaussian_state(grid, center=0.6, width=0.9, chirp=0.25)
    wm = wigner(psi)
    n = grid.n_points
    worst = 0.0
    for dm in range(-2, 3):
        for dk in range(-2, 3):
            m, k = n // 2 + dm, n // 2 + dk
            lhs = np.pi * wm.values[m, k]
            rhs = displaced_parity(psi, wm.mu_axis[m], wm.tau_axis[k])
            worst = max(worst, abs(lhs - rhs))
    print(f"criterion 05 max lattice mismatch = {worst:.3e} (tol 1e-6)")
    assert worst <= 1e-6


def test_criterion_06_negativity():
    """Odd cat hits -1/pi at the origin, cubic phase goes negative, Gaussians do not."""
    cat_grid = make_grid(512, 0.125)
    odd_cat = encode(cat_grid, CatCodeSpec(6.0, 0.5), 1)
    wm = wigner(odd_cat)
    n = cat_grid.n_points
    origin = wm.values[n // 2, n // 2]
    cat_defect = abs(origin + 1.0 / np.pi)

    cubic = cubic_phase(gaussian_state(balanced_grid(512), width=0.8), 0.5)
    cubic_min = float(wigner(cubic).values.min())

    rng = np.random.default_rng(31)
    gauss_min = min(
        float(wigner(random_packet(balanced_grid(128), rng)).values.min())
        for _ in range(5)
    )
    print(
        f"criterion 06 cat origin defect = {cat_defect:.3e} (tol 1e-6), "
        f"cubic min = {cubic_min:.3e} (< -1e-3), gaussian min = {gauss_min:.3e}"
    )
    assert cat_defect <= 1e-6
    assert cubic_min < -1e-3
    assert gauss_min >= -1e-10


def test_criterion_07_schmidt_number_law():
    """Mode count of the correlated Gaussian follows (r + 1/r)/2 to 1e-3."""
    grid = make_grid(256, 0.09)
    worst = 0.0
    for r in (0.1, 0.2, 0.5, 1.0):
        jsa = gaussian_jsa(grid, grid, GaussianJsaSpec(2.0 * r, 2.0))
        K = schmidt_number(schmidt_decompose(jsa))
        worst = max(worst, abs(K - (r + 1.0 / r) / 2.0))
    print(f"criterion 07 max |K - law| = {worst:.3e} (tol 1e-3)")
    assert worst <= 1e-3


def test_criterion_08_beam_splitter_disentangles():
    """The balanced frequency beam splitter removes the Gaussian correlations."""
    grid = balanced_grid(256)
    _, before, after = bloch_messiah_separate(
        gaussian_jsa(grid, grid, GaussianJsaSpec(0.2, 2.0))
    )
    _, before_sep, after_sep = bloch_messiah_separate(
        gaussian_jsa(grid, grid, GaussianJsaSpec(2.0, 2.0))
    )
    print(
        f"criterion 08 K {before:.4f} -> {after:.9f} (<= 1 + 1e-6); "
        f"separable {before_sep:.9f} -> {after_sep:.9f} (1 +/- 1e-8)"
    )
    assert after <= 1.0 + 1e-6
    assert abs(before_sep - 1.0) <= 1e-8
    assert abs(after_sep - 1.0) <= 1e-8


def test_criterion_09_conditional_shift():
    """The two-photon conditional gate subtracts the control frequency."""
    grid = balanced_grid(256)
    jsa = product_jsa(
        gaussian_state(grid, center=2.0, width=1.0),
        gaussian_state(grid, center=5.0, width=1.0),
    )
    shifted = cond_freq_time(jsa)
    marg_s, marg_i = jsa_marginals(shifted)
    centroid_s = float(np.sum(grid.omega_axis * marg_s) * grid.spacing)
    centroid_i = float(np.sum(grid.omega_axis * marg_i) * grid.spacing)
    route_diff = float(
        np.max(np.abs(shifted.values - cond_freq_time_via_fourier(jsa).values))
    )
    print(
        f"criterion 09 centroids = ({centroid_s:.6f}, {centroid_i:.6f}) "
        f"target (2, 3) within one cell ({grid.spacing:.4f}), "
        f"route difference = {route_diff:.3e} (tol 1e-10)"
    )
    assert abs(centroid_s - 2.0) <= grid.spacing
    assert abs(centroid_i - 3.0) <= grid.spacing
    assert route_diff <= 1e-10


def test_criterion_10_hom_interference():
    """Identical photons never coincide; an exchange-odd pair always does."""
    grid = balanced_grid(256)
    psi = gaussian_state(grid, width=1.0)
    delays, prob = hom_coincidence(product_jsa(psi, psi))
    witness_id, peak_id, _ = hom_witness(delays, prob)
    p_zero = float(prob[len(prob) // 2])

    a = gaussian_state(grid, center=-1.2, width=0.8)
    b = gaussian_state(grid, center=1.2, width=0.8)
    values = np.outer(a.values, b.values) - np.outer(b.values, a.values)
    values /= np.sqrt(np.sum(np.abs(values) ** 2) * grid.spacing**2)
    odd = JointSpectralAmplitude(grid, grid, values)
    delays_o, prob_o = hom_coincidence(odd)
    witness_odd, peak_odd, _ = hom_witness(delays_o, prob_o)
    print(
        f"criterion 10 identical P(0) = {p_zero:.3e} (tol 1e-6, witness {witness_id}), "
        f"exchange-odd peak = {peak_odd:.6f} (> 0.5, witness {witness_odd})"
    )
    assert p_zero <= 1e-6
    assert not witness_id
    assert peak_odd > 0.5
    assert witness_odd


def test_criterion_11_code_roundtrip_and_error_rate():
    """Both encodings decode cleanly and the comb code suppresses small shifts."""
    cat_grid = make_grid(512, 0.125)
    cat = CatCodeSpec(6.0, 0.5)
    gkp_grid = make_grid(512, 0.125)
    gkp = GkpCodeSpec(spacing=1.0, peak_width=0.15, envelope_width=4.0)
    confidences = []
    for spec, grid in ((cat, cat_grid), (gkp, gkp_grid)):
        for bit in (0, 1):
            result = decode(spec, encode(grid, spec, bit))
            assert result.bit == bit
            confidences.append(result.confidence)
    rate = logical_error_rate(
        gkp_grid, gkp, sigma_mu=gkp.spacing / 10.0, trials=10_000, seed=1234
    )
    print(
        f"criterion 11 min confidence = {min(confidences):.4f} (> 0.9), "
        f"logical error rate = {rate:.4f} (< 0.01 at sigma = spacing/10)"
    )
    assert min(confidences) > 0.9
    assert rate < 0.01


def test_criterion_12_cli_determinism(tmp_path):
    """Two CLI runs of the same config and seed produce identical bytes."""
    config = {
        "grid": {"n_points": 512, "spacing": 0.125},
        "source": {
            "kind": "gkp",
            "spacing": 1.0,
            "peak_width": 0.15,
            "envelope_width": 4.0,
        },
        "analyses": ["wigner", "moments", "codes"],
        "codes": {"sigma_mu": 0.1, "trials": 2000},
        "seed": 7,
        "export_state": True,
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    env = dict(os.environ)
    env["PYTHONPATH"] = str(SRC_DIR) + os.pathsep + env.get("PYTHONPATH", "")
    digests = []
    for out in ("a", "b"):
        result = subprocess.run(
            [
                sys.executable,
                "-m",
                "tfphoton.cli",
                "run",
                str(config_path),
                "--out",
                str(tmp_path / out),
            ],
            capture_output=True,
            text=True,
            env=env,
        )
        assert result.returncode == 0, result.stderr
        out_dir = tmp_path / out
        digests.append(
            {
                p.name: hashlib.sha256(p.read_bytes()).hexdigest()
                for p in sorted(out_dir.iterdir())
            }
        )
    print(
        f"criterion 12 files = {sorted(digests[0])}, "
        f"identical = {digests[0] == digests[1]}"
    )
    assert sorted(digests[0]) == [
        "codes.json",
        "manifest.json",
        "moments.json",
        "state.json",
        "wigner.csv",
    ]
    assert digests[0] == digests[1]
