import math
import sys
from pathlib import Path

import numpy as np
import pytest
import scipy.linalg

# Add the parent directory to sys.path to allow importing app modules
parent_dir = Path(__file__).resolve().parent.parent
sys.path.append(str(parent_dir))

from app.core.config import settings
from app.core.errors import NonRealSpectrumError, SolverFailureError, ZeroVectorError
from app.models.operators import Parity
from app.services.eigensolver import (
    _sample_basis,
    converge_spectrum,
    count_nodes,
    evaluate_series,
    normalize_state,
    residual,
    sample_wavefunction,
    solve_pair,
    solve_sector,
    state_overlap,
)
from app.services.operator_assembly import assemble_sector

# (alpha, m, beta) of the curvature-bound ground states; alpha = 0.75 is the converged value
BOUND_GROUND_STATES = [
    (0.75, 0, -1.0749),
    (0.50, 0, -0.3512),
    (0.25, 0, -0.2673),
    (0.25, 1, -0.1987),
    (0.05, 0, -0.2506),
    (0.05, 1, -0.2481),
    (0.05, 2, -0.2406),
]

@pytest.fixture(scope="module")
def half_torus_pair():
    return assemble_sector(0.5, 0, Parity.EVEN, True, 64)

@pytest.fixture(scope="module")
def half_torus_spectrum():
    return solve_sector(0.5, 0, Parity.EVEN, True, 64)

@pytest.mark.parametrize("alpha, m, beta", BOUND_GROUND_STATES)
def test_bound_ground_state_energy(alpha, m, beta):
    """Lowest even-sector beta at N = 64 matches the reference value."""
    spectrum = solve_sector(alpha, m, Parity.EVEN, True, 64)

    assert spectrum.ground.beta == pytest.approx(beta, abs=2e-3)
    assert spectrum.ground.is_bound
    assert spectrum.ground.node_count == 0

@pytest.mark.parametrize("alpha, m, beta", BOUND_GROUND_STATES)
def test_truncation_converged(alpha, m, beta):
    coarse = solve_sector(alpha, m, Parity.EVEN, True, 64)
    fine = solve_sector(alpha, m, Parity.EVEN, True, 128)
    assert abs(coarse.ground.beta - fine.ground.beta) <= 1e-8

def collocation_ground_beta(alpha, m, points=128):
    """Lowest beta of the unmultiplied angular equation by Fourier collocation."""
    theta = 2.0 * np.pi * np.arange(points) / points
    k = np.fft.fftfreq(points, d=1.0 / points)
    first = 1j * k
    first[points // 2] = 0.0
    identity = np.eye(points)
    d1 = np.real(np.fft.ifft(first[:, None] * np.fft.fft(identity, axis=0), axis=0))
    d2 = np.real(np.fft.ifft((-k ** 2)[:, None] * np.fft.fft(identity, axis=0), axis=0))

    weight = 1.0 + alpha * np.cos(theta)
    operator = (
        -d2
        + np.diag(alpha * np.sin(theta) / weight) @ d1
        + np.diag(((m * alpha) ** 2 - 0.25) / weight ** 2)
    )
    return float(np.min(np.real(scipy.linalg.eigvals(operator))))

def test_fat_torus_ground_state_converged():
    """The alpha = 0.75 ground state settles at -1.0749137, below the listed -1.0725."""
    independent = collocation_ground_beta(0.75, 0)
    spectrum = solve_sector(0.75, 0, Parity.EVEN, True, 128)

    assert independent == pytest.approx(-1.0749137, abs=1e-6)
    assert spectrum.ground.beta == pytest.approx(independent, abs=1e-6)
    assert abs(spectrum.ground.beta - (-1.0725)) > 2e-3

def test_collocation_agrees_on_thin_torus():
    spectrum = solve_sector(0.05, 1, Parity.EVEN, True, 64)
    assert spectrum.ground.beta == pytest.approx(collocation_ground_beta(0.05, 1), abs=1e-7)

def test_free_ground_state_is_constant():
    """The free m = 0 problem keeps beta = 0 with a constant eigenvector."""
    rng = np.random.default_rng(11)
    for alpha in rng.uniform(0.05, 0.9, 20):
        spectrum = solve_sector(alpha, 0, Parity.EVEN, False, 64)
        ground = spectrum.ground

        assert abs(ground.beta) <= 1e-10
        assert np.all(np.abs(ground.coeffs[1:]) <= 1e-9)
        assert ground.coeffs[0] == pytest.approx(1.0 / math.sqrt(2.0 * math.pi * alpha), rel=1e-9)
        assert ground.node_count == 0

def test_free_m1_state():
    spectrum = solve_sector(0.25, 1, Parity.EVEN, False, 64)
    assert spectrum.ground.beta == pytest.approx(0.0641, abs=2e-3)

def test_spectrum_sorted_and_indexed(half_torus_spectrum):
    betas = half_torus_spectrum.betas

    assert np.all(np.diff(betas) >= 0)
    assert [state.n_index for state in half_torus_spectrum.states] == list(range(len(betas)))
    assert half_torus_spectrum.truncation_used == 64
    assert half_torus_spectrum.converged is False

def test_states_normalized_and_orthogonal(half_torus_spectrum):
    """Low states are orthonormal under the surface measure."""
    low = half_torus_spectrum.states[:5]
    for i, first in enumerate(low):
        assert state_overlap(first, first, 0.5) == pytest.approx(1.0, abs=1e-10)
        for second in low[i + 1:]:
            assert abs(state_overlap(first, second, 0.5)) <= 1e-9

def test_low_state_residuals(half_torus_pair, half_torus_spectrum):
    for state in half_torus_spectrum.states[:5]:
        assert residual(half_torus_pair, state) <= settings.RESIDUAL_TOL

def test_leading_coefficient_positive(half_torus_spectrum):
    for state in half_torus_spectrum.states[:5]:
        assert state.coeffs[0] > 0
        assert state.norm_constant == pytest.approx(state.coeffs[0])

def test_odd_ground_state_nodes():
    """sin theta-like state: sign changes at 0 and pi."""
    spectrum = solve_sector(0.5, 0, Parity.ODD, True, 64)
    assert spectrum.parity == Parity.ODD
    assert spectrum.ground.node_count == 2
    assert spectrum.ground.beta >= -settings.BOUND_TOL

def test_sampled_norm(half_torus_spectrum):
    """A uniform grid integrates the band-limited density exactly."""
    alpha = 0.5
    theta = 2.0 * np.pi * np.arange(256) / 256
    psi = sample_wavefunction(half_torus_spectrum.ground, theta)
    integral = 2.0 * np.pi * np.mean(psi ** 2 * alpha * (1.0 + alpha * np.cos(theta)))
    assert integral == pytest.approx(1.0, abs=1e-10)

def test_evaluate_series():
    values = evaluate_series(np.array([1.0, 2.0]), Parity.EVEN, [0.0, np.pi])
    assert np.allclose(values, [3.0, -1.0])

    values = evaluate_series(np.array([1.0]), Parity.ODD, [np.pi / 2])
    assert np.allclose(values, [1.0])

def test_count_nodes():
    theta = 2.0 * np.pi * np.arange(64) / 64
    assert count_nodes(np.ones(64)) == 0
    assert count_nodes(np.cos(theta)) == 2
    assert count_nodes(np.cos(3 * theta) + 0.1) == 6

def test_converge_spectrum():
    spectrum = converge_spectrum(0.5, 0, Parity.EVEN, True, n_start=8)

    assert spectrum.converged
    assert spectrum.truncation_used >= 16
    assert spectrum.ground.beta == pytest.approx(-0.3512, abs=2e-3)

def test_node_count_non_decreasing(half_torus_spectrum):
    """Higher states oscillate at least as often as lower ones."""
    counts = [state.node_count for state in half_torus_spectrum.states[:20]]
    assert counts[0] == 0
    assert all(later >= earlier for earlier, later in zip(counts, counts[1:])), counts

def test_converge_spectrum_tolerances_agree():
    loose = converge_spectrum(0.5, 0, Parity.EVEN, True, tol=1e-6)
    tight = converge_spectrum(0.5, 0, Parity.EVEN, True, tol=1e-10)

    assert loose.converged and tight.converged
    assert tight.truncation_used >= loose.truncation_used
    assert abs(loose.ground.beta - tight.ground.beta) <= 1e-6

def test_converge_spectrum_arguments():
    with pytest.raises(ValueError):
        converge_spectrum(0.5, 0, Parity.EVEN, tol=0.0)
    with pytest.raises(ValueError):
        converge_spectrum(0.5, 0, Parity.EVEN, n_start=4)

def test_zero_vector_rejected():
    with pytest.raises(ZeroVectorError):
        normalize_state(np.zeros(5), 0.5)

def test_normalize_state_fixes_sign():
    state = normalize_state(np.array([-2.0, 0.5, 0.0]), 0.4)
    assert state.coeffs[0] > 0
    assert state.coeffs[1] < 0
    assert state_overlap(state, state, 0.4) == pytest.approx(1.0)

def test_indefinite_weight_fails(half_torus_pair):
    broken = half_torus_pair.copy(update={"b_matrix": -half_torus_pair.b_matrix})
    with pytest.raises(SolverFailureError):
        solve_pair(broken)

def test_complex_spectrum_rejected(half_torus_pair):
    size = half_torus_pair.size
    rotation = np.zeros((size, size))
    rotation[0, 1], rotation[1, 0] = 1.0, -1.0
    broken = half_torus_pair.copy(update={"a_matrix": rotation, "b_matrix": np.eye(size)})
    with pytest.raises(NonRealSpectrumError):
        solve_pair(broken)

def test_sample_basis_cache_stays_small():
    """Only the current even and odd node-count grids stay cached."""
    converge_spectrum(0.5, 0, Parity.EVEN, True, n_start=8)
    solve_sector(0.5, 1, Parity.ODD, True, 256)

    info = _sample_basis.cache_info()
    assert info.maxsize == 2
    assert info.currsize <= 2
