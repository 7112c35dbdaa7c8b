import logging
import math
from typing import Sequence

import numpy as np
import pandas as pd

from app.core.errors import DomainError, NonFiniteError
from app.models.geometry import CurvatureBundle, MongeSurface, TorusGeometry

# Configure logging
logger = logging.getLogger("geometry")

def monge_curvatures(surface: MongeSurface, rho: float) -> CurvatureBundle:
    """
    Compute the curvature bundle of a surface of revolution z = S(rho).

    Uses k1 = -S_rr / Z^3 and k2 = -S_r / (rho Z) with Z = sqrt(1 + S_r^2), the
    sign convention of the [1 + q k] metric factors, so the upper torus patch has
    k1 = +1/a.

    Args:
        surface (MongeSurface): Shape function and its derivatives
        rho (float): Distance from the symmetry axis, must be positive

    Returns:
        CurvatureBundle: Curvatures and curvature potential at rho

    Raises:
        DomainError: If rho <= 0
        NonFiniteError: If a derivative is not a finite real number at rho
    """
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")

    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        values = np.asarray([surface.shape_d1(rho), surface.shape_d2(rho)])

    # Fractional powers of negative floats come back complex outside the domain
    if np.iscomplexobj(values):
        if np.any(values.imag != 0):
            raise NonFiniteError(f"{surface.name}: derivatives not real at rho={rho} ({values.tolist()})")
        values = values.real
    s_r, s_rr = (float(value) for value in values)

    if not (math.isfinite(s_r) and math.isfinite(s_rr)):
        raise NonFiniteError(f"{surface.name}: derivatives not finite at rho={rho} (S_r={s_r}, S_rr={s_rr})")

    z = math.sqrt(1.0 + s_r * s_r)
    k1 = -s_rr / z ** 3
    k2 = -s_r / (rho * z)
    return CurvatureBundle.from_principal(k1, k2)

def torus_curvatures(geom: TorusGeometry, theta: float) -> CurvatureBundle:
    """
    Closed-form curvature bundle of the torus at poloidal angle theta.

    k1 = 1/a, k2 = cos(theta)/F with F = R + a cos(theta); the potential is taken
    verbatim as -R^2 / (8 a^2 F^2).
    """
    f = geom.F(theta)
    k1 = 1.0 / geom.a
    k2 = math.cos(theta) / f
    vc = -geom.R ** 2 / (8.0 * geom.a ** 2 * f ** 2)
    return CurvatureBundle.from_principal(k1, k2, Vc=vc)

def norm_weight(q: float, bundle: CurvatureBundle) -> float:
    """
    Norm-conserving weight W = 1 + 2qH + q^2 K a distance q off the surface.

    Args:
        q (float): Normal coordinate
        bundle (CurvatureBundle): Curvatures at the foot point

    Returns:
        float: W, equal to 1 at q = 0
    """
    if q == 0:
        return 1.0
    return 1.0 + 2.0 * q * bundle.H + q * q * bundle.K

def derivative_mismatch(surface: MongeSurface, rho: float, step: float = 1e-4) -> float:
    """
    Largest discrepancy between the supplied derivatives and central differences of the shape.

    Both differences are O(step^2) accurate, so a consistent surface returns a
    value of that order.
    """
    s_minus, s_zero, s_plus = (surface.shape(rho - step), surface.shape(rho), surface.shape(rho + step))
    d1 = (s_plus - s_minus) / (2.0 * step)
    d2 = (s_plus - 2.0 * s_zero + s_minus) / step ** 2
    return max(abs(d1 - surface.shape_d1(rho)), abs(d2 - surface.shape_d2(rho)))

def torus_rho(geom: TorusGeometry, theta: float) -> float:
    """Radial coordinate of the torus point at theta (the scalar F)."""
    return geom.F(theta)

def torus_theta_from_rho(geom: TorusGeometry, rho: float) -> float:
    """Poloidal angle in [0, pi] of the upper-patch point at radius rho."""
    return math.acos(max(-1.0, min(1.0, (rho - geom.R) / geom.a)))

def torus_curvature_profile(geom: TorusGeometry, thetas: Sequence[float]) -> pd.DataFrame:
    """
    Tabulate the closed-form torus curvatures on a grid of angles.

    Returns:
        pd.DataFrame: Columns theta, k1, k2, H, K, Vc
    """
    theta = np.asarray(thetas, dtype=float)
    f = geom.R + geom.a * np.cos(theta)
    k1 = np.full_like(theta, 1.0 / geom.a)
    k2 = np.cos(theta) / f
    profile = pd.DataFrame({
        "theta": theta,
        "k1": k1,
        "k2": k2,
        "H": 0.5 * (k1 + k2),
        "K": k1 * k2,
        "Vc": -geom.R ** 2 / (8.0 * geom.a ** 2 * f ** 2),
    })
    logger.debug(f"Curvature profile for alpha={geom.alpha} on {len(theta)} points")
    return profile

# Surface factories

def plane() -> MongeSurface:
    return MongeSurface(
        shape=lambda rho: 0.0,
        shape_d1=lambda rho: 0.0,
        shape_d2=lambda rho: 0.0,
        name="plane",
    )

def hemisphere(radius: float) -> MongeSurface:
    """Upper hemisphere S = sqrt(R^2 - rho^2), valid for 0 < rho < R."""
    r2 = radius * radius
    return MongeSurface(
        shape=lambda rho: np.sqrt(r2 - rho * rho),
        shape_d1=lambda rho: -rho / np.sqrt(r2 - rho * rho),
        shape_d2=lambda rho: -r2 / np.sqrt(r2 - rho * rho) ** 3,
        name=f"hemisphere(R={radius})",
    )

def paraboloid(apex_radius: float) -> MongeSurface:
    """S = rho^2 / (2 r0); umbilic only at the apex."""
    return MongeSurface(
        shape=lambda rho: rho * rho / (2.0 * apex_radius),
        shape_d1=lambda rho: rho / apex_radius,
        shape_d2=lambda rho: 1.0 / apex_radius,
        name=f"paraboloid(r0={apex_radius})",
    )

def catenoid(waist: float) -> MongeSurface:
    """Upper half of the catenoid S = c arccosh(rho/c), rho > c. Minimal: H = 0."""
    c = waist
    return MongeSurface(
        shape=lambda rho: c * np.arccosh(rho / c),
        shape_d1=lambda rho: c / np.sqrt(rho * rho - c * c),
        shape_d2=lambda rho: -c * rho / np.sqrt(rho * rho - c * c) ** 3,
        name=f"catenoid(c={waist})",
    )

def torus_patch(geom: TorusGeometry) -> MongeSurface:
    """Upper half of the torus, S = sqrt(a^2 - (rho - R)^2) on R - a < rho < R + a."""
    a2, big_r = geom.a ** 2, geom.R
    return MongeSurface(
        shape=lambda rho: np.sqrt(a2 - (rho - big_r) ** 2),
        shape_d1=lambda rho: -(rho - big_r) / np.sqrt(a2 - (rho - big_r) ** 2),
        shape_d2=lambda rho: -a2 / np.sqrt(a2 - (rho - big_r) ** 2) ** 3,
        name=f"torus_patch(a={geom.a}, R={geom.R})",
    )
