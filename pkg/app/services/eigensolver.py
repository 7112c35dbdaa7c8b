import logging
import math
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from app.core.config import settings
from app.core.errors import NonRealSpectrumError, SolverFailureError, ZeroVectorError
from app.models.operators import OperatorPair, Parity
from app.models.spectrum import Eigenstate, Spectrum
from app.services.operator_assembly import assemble_sector, surface_gram

# Configure logging
logger = logging.getLogger("eigensolver")

def solve_pair(pair: OperatorPair) -> List[Tuple[float, np.ndarray]]:
    """
    Solve A c = beta B c for every eigenpair of a pair.

    B is factored as L L^T, the similar matrix L^-1 A L^-T is diagonalized densely
    and the eigenvectors are mapped back with L^-T. A is not symmetric, so the
    eigenvalues are checked for reality instead of assumed real.

    Args:
        pair (OperatorPair): Matrices of one sector (or the full basis)

    Returns:
        List[Tuple[float, np.ndarray]]: (beta, coefficient vector) sorted ascending by beta

    Raises:
        NonRealSpectrumError: If an eigenvalue has |Im beta| > REALITY_TOL (1 + |beta|)
        SolverFailureError: If the Cholesky factorization or the eigensolver fails
    """
    try:
        lower = linalg.cholesky(pair.b_matrix, lower=True)
        reduced = linalg.solve_triangular(lower, pair.a_matrix, lower=True)
        reduced = linalg.solve_triangular(lower, reduced.T, lower=True).T
        eigenvalues, vectors = linalg.eig(reduced)
    except (linalg.LinAlgError, ValueError) as e:
        logger.error(f"Eigen decomposition failed for alpha={pair.alpha}, {pair.spec}: {e}")
        raise SolverFailureError(f"eigen decomposition failed: {e}") from e

    imaginary = np.abs(eigenvalues.imag)
    limit = settings.REALITY_TOL * (1.0 + np.abs(eigenvalues.real))
    if np.any(imaginary > limit):
        worst = int(np.argmax(imaginary / limit))
        raise NonRealSpectrumError(
            f"eigenvalue {eigenvalues[worst]} of sector {pair.spec} at alpha={pair.alpha} is not real"
        )

    coefficients = linalg.solve_triangular(lower, vectors, lower=True, trans="T")

    pairs = []
    for column in np.argsort(eigenvalues.real, kind="stable"):
        vector = coefficients[:, column]
        # A real eigenvalue has a complex multiple of a real eigenvector
        pivot = int(np.argmax(np.abs(vector)))
        vector = (vector / vector[pivot]).real
        pairs.append((float(eigenvalues[column].real), vector))
    return pairs

@lru_cache(maxsize=2)
def _sample_basis(parity: Parity, size: int, samples: int) -> np.ndarray:
    """Matrix of cos(n theta_j) or sin(n theta_j) on a uniform closed-open grid."""
    theta = 2.0 * np.pi * np.arange(samples) / samples
    orders = np.arange(size) if parity == Parity.EVEN else np.arange(1, size + 1)
    basis = np.cos(np.outer(theta, orders)) if parity == Parity.EVEN else np.sin(np.outer(theta, orders))
    basis.flags.writeable = False
    return basis

def evaluate_series(coeffs: np.ndarray, parity: Parity, thetas: Sequence[float]) -> np.ndarray:
    """Evaluate sum d_n cos(n theta) (even) or sum d_n sin(n theta) (odd) at arbitrary angles."""
    theta = np.asarray(thetas, dtype=float)
    orders = np.arange(len(coeffs)) if parity == Parity.EVEN else np.arange(1, len(coeffs) + 1)
    trig = np.cos if parity == Parity.EVEN else np.sin
    return trig(np.outer(theta, orders)) @ np.asarray(coeffs, dtype=float)

def count_nodes(values: np.ndarray) -> int:
    """Sign changes of a periodic sample sequence; near-zero samples are skipped."""
    scale = np.max(np.abs(values))
    signs = np.sign(values[np.abs(values) > 1e-12 * scale])
    if len(signs) < 2:
        return 0
    return int(np.count_nonzero(signs != np.roll(signs, 1)))

def normalize_state(coeffs: np.ndarray, alpha: float, parity: Parity = Parity.EVEN, beta: float = 0.0,
                    m: int = 0, n_index: int = 0) -> Eigenstate:
    """
    Normalize a sector coefficient vector under the R = 1 surface measure.

    The integral of |psi|^2 alpha (1 + alpha cos theta) over a full turn is one (the
    azimuthal (2 pi)^-1/2 is excluded). The leading nonzero coefficient (the
    constant or sin theta term) is made non-negative, and norm_constant is the
    normalized value of that coefficient, i.e. the scale applied to the series
    whose leading coefficient is one.

    Raises:
        ZeroVectorError: If the vector is (numerically) zero
    """
    vector = np.asarray(coeffs, dtype=float)
    largest = np.max(np.abs(vector)) if vector.size else 0.0
    if not largest > 0 or not math.isfinite(largest):
        raise ZeroVectorError("cannot normalize a zero or non-finite coefficient vector")

    pivot = int(np.flatnonzero(np.abs(vector) > 1e-12 * largest)[0])
    unit = vector / vector[pivot]

    gram = surface_gram(alpha, parity, len(unit) if parity == Parity.ODD else len(unit) - 1)
    norm = math.sqrt(2.0 * math.pi * alpha * float(unit @ gram @ unit))
    norm_constant = 1.0 / norm
    normalized = unit * norm_constant
    normalized.flags.writeable = False

    samples = _sample_basis(parity, len(normalized), settings.NODE_SAMPLES) @ normalized
    return Eigenstate(
        beta=beta,
        m=m,
        parity=parity,
        n_index=n_index,
        coeffs=normalized,
        node_count=count_nodes(samples),
        norm_constant=norm_constant,
    )

def _build_spectrum(pair: OperatorPair, pairs: List[Tuple[float, np.ndarray]], converged: bool) -> Spectrum:
    states = []
    for n_index, (beta, vector) in enumerate(pairs):
        state = normalize_state(vector, pair.alpha, pair.spec.parity, beta=beta, m=pair.spec.m, n_index=n_index)
        states.append(state)

    # Flag coincident betas inside the sector
    for first, second in zip(states, states[1:]):
        if abs(second.beta - first.beta) <= 1e-12 * (1.0 + abs(first.beta)):
            logger.warning(f"Near-degenerate betas {first.beta} and {second.beta} in sector m={pair.spec.m}")
            states[first.n_index] = first.copy(update={"degenerate": True})
            states[second.n_index] = second.copy(update={"degenerate": True})

    return Spectrum(
        alpha=pair.alpha,
        m=pair.spec.m,
        parity=pair.spec.parity,
        include_vc=pair.spec.include_vc,
        states=states,
        truncation_used=pair.spec.n_basis,
        converged=converged,
    )

def solve_sector(alpha: float, m: int, parity: Parity, include_vc: bool = True,
                 n_basis: Optional[int] = None) -> Spectrum:
    """Solve one (m, parity) sector at a fixed truncation; converged is left False."""
    pair = assemble_sector(alpha, m, parity, include_vc, n_basis)
    return _build_spectrum(pair, solve_pair(pair), converged=False)

def converge_spectrum(alpha: float, m: int, parity: Parity, include_vc: bool = True,
                      tol: Optional[float] = None, n_start: int = 8) -> Spectrum:
    """
    Double the truncation until the lowest betas stop moving.

    Starting at n_start, N is doubled until the lowest CONVERGENCE_WINDOW betas of
    two successive truncations agree to tol. The last solve is returned; if N_MAX
    is reached first the spectrum is marked converged=False.

    Args:
        tol (float, optional): Convergence tolerance. Defaults to settings.CONVERGENCE_TOL.
        n_start (int): First truncation, at least 8
    """
    tol = settings.CONVERGENCE_TOL if tol is None else tol
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if n_start < 8:
        raise ValueError(f"n_start must be >= 8, got {n_start}")

    window = settings.CONVERGENCE_WINDOW
    n_basis = n_start
    pair = assemble_sector(alpha, m, parity, include_vc, n_basis)
    pairs = solve_pair(pair)

    while 2 * n_basis <= settings.N_MAX:
        n_basis *= 2
        next_pair = assemble_sector(alpha, m, parity, include_vc, n_basis)
        next_pairs = solve_pair(next_pair)

        previous = np.array([beta for beta, _ in pairs[:window]])
        current = np.array([beta for beta, _ in next_pairs[:len(previous)]])
        drift = float(np.max(np.abs(current - previous)))
        logger.debug(f"alpha={alpha} m={m} {parity.value}: N={n_basis} drift={drift:.3e}")

        pair, pairs = next_pair, next_pairs
        if drift < tol:
            logger.info(f"Converged alpha={alpha} m={m} {parity.value} at N={n_basis} (drift {drift:.2e})")
            return _build_spectrum(pair, pairs, converged=True)

    logger.warning(f"No convergence for alpha={alpha} m={m} {parity.value} up to N={n_basis}")
    return _build_spectrum(pair, pairs, converged=False)

def residual(pair: OperatorPair, state: Eigenstate) -> float:
    """Relative residual ||A c - beta B c|| / ||B c|| of a state in its own sector pair."""
    coeffs = np.asarray(state.coeffs)
    b_c = pair.b_matrix @ coeffs
    return float(np.linalg.norm(pair.a_matrix @ coeffs - state.beta * b_c) / np.linalg.norm(b_c))

def sample_wavefunction(state: Eigenstate, thetas: Sequence[float]) -> np.ndarray:
    """psi(theta) of a normalized state at the given angles."""
    return evaluate_series(state.coeffs, state.parity, thetas)

def state_overlap(first: Eigenstate, second: Eigenstate, alpha: float) -> float:
    """
    Surface-measure overlap of two states of the same parity.

    Coefficient vectors of different truncations are zero-padded to a common length.
    """
    if first.parity != second.parity:
        return 0.0
    size = max(len(first.coeffs), len(second.coeffs))
    left = np.zeros(size)
    right = np.zeros(size)
    left[:len(first.coeffs)] = first.coeffs
    right[:len(second.coeffs)] = second.coeffs
    gram = surface_gram(alpha, first.parity, size if first.parity == Parity.ODD else size - 1)
    return float(2.0 * math.pi * alpha * left @ gram @ right)
