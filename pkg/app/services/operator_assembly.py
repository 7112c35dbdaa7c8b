import logging
from functools import lru_cache
from typing import Optional

import numpy as np

from app.core.config import settings
from app.core.errors import GridTooSmallError, InvalidAlphaError, InvalidTruncationError
from app.models.operators import Basis, ModeSpec, OperatorPair, Parity

# Configure logging
logger = logging.getLogger("operator_assembly")

def potential_coefficient(alpha: float, m: int, include_vc: bool) -> float:
    """
    Coefficient m^2 alpha^2 - 1/4 of the 1/(1 + alpha cos theta)^2 term.

    Computed as (m alpha)^2 so that alpha = 1/(2m) cancels the 1/4 exactly.
    """
    return (m * alpha) ** 2 - (0.25 if include_vc else 0.0)

def _check_alpha(alpha: float) -> None:
    if not 0 < alpha < 1:
        raise InvalidAlphaError(f"alpha must lie in (0, 1), got {alpha}")

def _weight_bands(alpha: float):
    """Fourier coefficients f0, f1, f2 of (1 + alpha cos theta)^2."""
    return 1.0 + 0.5 * alpha * alpha, alpha, 0.25 * alpha * alpha

def _banded(size: int, bands) -> np.ndarray:
    """Symmetric Toeplitz matrix from its diagonal and upper bands."""
    matrix = np.zeros((size, size))
    for offset, value in enumerate(bands):
        if offset >= size:
            break
        band = np.full(size - offset, value)
        matrix += np.diag(band, offset)
        if offset:
            matrix += np.diag(band, -offset)
    return matrix

def assemble_full(alpha: float, spec: ModeSpec) -> OperatorPair:
    """
    Assemble A and B over the exponential basis e^{ik theta}, k = -N..N.

    The angular equation is multiplied through by (1 + alpha cos theta)^2 so that
    both matrices are exactly pentadiagonal:

        B[k, n] = f_{k-n},  f0 = 1 + alpha^2/2, f1 = alpha, f2 = alpha^2/4
        A[k, k]   = k^2 f0 + (m^2 alpha^2 - 1/4 [include_vc])
        A[k, k+1] = alpha (k+1)(k+1/2),       A[k, k-1] = alpha (k-1)(k-1/2)
        A[k, k+2] = alpha^2/4 (k+2)(k+1),     A[k, k-2] = alpha^2/4 (k-2)(k-1)

    Args:
        alpha (float): Aspect ratio a/R in (0, 1)
        spec (ModeSpec): m, truncation N and the curvature-potential switch; parity is ignored

    Returns:
        OperatorPair: Matrices of size 2N+1 in the exponential basis
    """
    _check_alpha(alpha)
    n = spec.n_basis
    if n < 4:
        raise InvalidTruncationError(f"n_basis must be >= 4, got {n}")

    k = np.arange(-n, n + 1, dtype=float)
    f0, f1, f2 = _weight_bands(alpha)

    b = _banded(2 * n + 1, (f0, f1, f2))

    a = np.diag(k * k * f0 + potential_coefficient(alpha, spec.m, spec.include_vc))
    a += np.diag(f1 * (k[:-1] + 1.0) * (k[:-1] + 0.5), 1)
    a += np.diag(f1 * (k[1:] - 1.0) * (k[1:] - 0.5), -1)
    a += np.diag(f2 * (k[:-2] + 2.0) * (k[:-2] + 1.0), 2)
    a += np.diag(f2 * (k[2:] - 2.0) * (k[2:] - 1.0), -2)

    full_spec = spec.copy(update={"parity": None})
    return OperatorPair(a_matrix=a, b_matrix=b, spec=full_spec, alpha=alpha, basis=Basis.EXPONENTIAL)

def parity_projector(n_basis: int, parity: Parity) -> np.ndarray:
    """
    Map sector coefficients to exponential coefficients.

    Even: psi = d0 + sum d_n cos(n theta), so c_0 = d_0 and c_{+-n} = d_n / 2.
    Odd:  psi = sum d_n sin(n theta), represented up to the constant factor i
          as c_{+-n} = +-d_n / 2 to keep the sector matrices real.
    """
    center = n_basis
    if parity == Parity.EVEN:
        projector = np.zeros((2 * n_basis + 1, n_basis + 1))
        projector[center, 0] = 1.0
        for index in range(1, n_basis + 1):
            projector[center + index, index] = 0.5
            projector[center - index, index] = 0.5
    else:
        projector = np.zeros((2 * n_basis + 1, n_basis))
        for index in range(1, n_basis + 1):
            projector[center + index, index - 1] = 0.5
            projector[center - index, index - 1] = -0.5
    return projector

def parity_project(pair: OperatorPair, parity: Parity) -> OperatorPair:
    """
    Restrict a full exponential-basis pair to one parity sector.

    The sector matrices are P^T M P, i.e. (1/2pi) * integral of basis_k * Op(basis_n);
    the even sector has N+1 cosines (including the constant), the odd sector N sines.
    """
    if pair.basis != Basis.EXPONENTIAL:
        raise ValueError(f"parity_project expects an exponential-basis pair, got {pair.basis.value}")

    projector = parity_projector(pair.spec.n_basis, parity)
    a = projector.T @ pair.a_matrix @ projector
    b = projector.T @ pair.b_matrix @ projector
    b = 0.5 * (b + b.T)

    basis = Basis.COSINE if parity == Parity.EVEN else Basis.SINE
    spec = pair.spec.copy(update={"parity": parity})
    return OperatorPair(a_matrix=a, b_matrix=b, spec=spec, alpha=pair.alpha, basis=basis)

def assemble_sector(alpha: float, m: int, parity: Parity, include_vc: bool = True,
                    n_basis: Optional[int] = None) -> OperatorPair:
    """Assemble the full pair and project it onto one parity sector."""
    spec = ModeSpec(m=m, n_basis=n_basis or settings.N_BASIS, include_vc=include_vc)
    return parity_project(assemble_full(alpha, spec), parity)

@lru_cache(maxsize=64)
def surface_gram(alpha: float, parity: Parity, n_basis: int) -> np.ndarray:
    """
    Sector Gram matrix of the weight (1 + alpha cos theta).

    For sector coefficients d, 2 pi alpha d^T G d is the integral of
    |psi|^2 alpha (1 + alpha cos theta) over a full turn (R = 1 surface measure).
    """
    _check_alpha(alpha)
    weight = _banded(2 * n_basis + 1, (1.0, 0.5 * alpha))
    projector = parity_projector(n_basis, parity)
    gram = projector.T @ weight @ projector
    gram = 0.5 * (gram + gram.T)
    gram.flags.writeable = False
    return gram

def _grid(grid_points: int) -> np.ndarray:
    if grid_points < 1024:
        raise GridTooSmallError(f"quadrature needs at least 1024 points, got {grid_points}")
    if grid_points & (grid_points - 1):
        raise GridTooSmallError(f"quadrature grid must be a power of two, got {grid_points}")
    return np.arange(grid_points)

def _phase(frequency: int, index: np.ndarray, grid_points: int) -> np.ndarray:
    """e^{i frequency theta_j} with the phase reduced modulo one turn before exponentiating."""
    return np.exp(2j * np.pi * ((frequency * index) % grid_points) / grid_points)

def quadrature_oracle(alpha: float, m: int, include_vc: bool, k: int, n: int,
                      grid_points: Optional[int] = None, matrix: str = "a") -> float:
    """
    Matrix element by trapezoidal quadrature, independent of the band formulas.

    Applies the multiplied-through operator
        Op psi = -(1 + alpha cos)^2 psi'' + alpha sin (1 + alpha cos) psi' + (m^2 alpha^2 - 1/4) psi
    to e^{in theta} and projects on e^{ik theta}. The integrand is band-limited,
    so the uniform rule is exact up to rounding.

    Args:
        matrix (str): "a" for the operator, "b" for the (1 + alpha cos theta)^2 weight
    """
    grid_points = grid_points or settings.QUADRATURE_POINTS
    index = _grid(grid_points)
    theta = 2.0 * np.pi * index / grid_points
    weight = 1.0 + alpha * np.cos(theta)
    phase = _phase(n - k, index, grid_points)

    weight_term = np.mean(phase * weight ** 2)
    if matrix == "b":
        return float(weight_term.real)

    drift_term = np.mean(phase * alpha * np.sin(theta) * weight)
    coupling = m * m * alpha * alpha - (0.25 if include_vc else 0.0)
    value = n * n * weight_term + 1j * n * drift_term
    if k == n:
        value += coupling
    return float(value.real)

def sector_quadrature_oracle(alpha: float, m: int, include_vc: bool, parity: Parity, k: int, n: int,
                             grid_points: Optional[int] = None, matrix: str = "a") -> float:
    """
    Sector matrix element (1/2pi) * integral of basis_k * Op(basis_n) by quadrature.

    basis_n is cos(n theta) for the even sector (n >= 0) and sin(n theta) for the
    odd sector (n >= 1); k and n are trigonometric orders, not row indices.
    """
    grid_points = grid_points or settings.QUADRATURE_POINTS
    theta = 2.0 * np.pi * _grid(grid_points) / grid_points
    weight = 1.0 + alpha * np.cos(theta)

    if parity == Parity.EVEN:
        test, trial = np.cos(k * theta), np.cos(n * theta)
        trial_d1, trial_d2 = -n * np.sin(n * theta), -n * n * np.cos(n * theta)
    else:
        test, trial = np.sin(k * theta), np.sin(n * theta)
        trial_d1, trial_d2 = n * np.cos(n * theta), -n * n * np.sin(n * theta)

    if matrix == "b":
        return float(np.mean(test * weight ** 2 * trial))

    coupling = m * m * alpha * alpha - (0.25 if include_vc else 0.0)
    applied = -weight ** 2 * trial_d2 + alpha * np.sin(theta) * weight * trial_d1 + coupling * trial
    return float(np.mean(test * applied))
