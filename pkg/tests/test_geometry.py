import math
import sys
from pathlib import Path

import numpy as np
import pytest
from pydantic import ValidationError

# Add the parent directory to sys.path to allow importing app modules
parent_dir = Path(__file__).resolve().parent.parent
sys.path.append(str(parent_dir))

from app.core.errors import DomainError, NonFiniteError
from app.models.geometry import CurvatureBundle, MongeSurface, TorusGeometry
from app.services.geometry import (
    catenoid,
    derivative_mismatch,
    hemisphere,
    monge_curvatures,
    norm_weight,
    paraboloid,
    plane,
    torus_curvature_profile,
    torus_curvatures,
    torus_patch,
    torus_rho,
    torus_theta_from_rho,
)

@pytest.fixture(scope="module")
def rng():
    return np.random.default_rng(20240601)

def test_torus_outer_equator():
    """Closed form at theta = 0 for a = 0.5, R = 1."""
    bundle = torus_curvatures(TorusGeometry(a=0.5, R=1.0), 0.0)

    assert bundle.k1 == pytest.approx(2.0)
    assert bundle.k2 == pytest.approx(2.0 / 3.0)
    assert bundle.H == pytest.approx(4.0 / 3.0)
    assert bundle.K == pytest.approx(4.0 / 3.0)
    assert bundle.Vc == pytest.approx(-2.0 / 9.0, abs=1e-12)

def test_torus_potential_identity(rng):
    """-(H^2 - K)/2 from the principal curvatures equals the closed form."""
    alphas = rng.uniform(0.01, 0.99, 1000)
    thetas = rng.uniform(0.0, 2.0 * math.pi, 1000)

    for alpha, theta in zip(alphas, thetas):
        bundle = torus_curvatures(TorusGeometry.from_alpha(alpha), theta)
        from_principal = -(bundle.H ** 2 - bundle.K) / 2.0
        assert from_principal == pytest.approx(bundle.Vc, rel=1e-13)

def test_monge_torus_patch_matches_closed_form(rng):
    """The upper torus patch reproduces the closed-form curvatures."""
    for _ in range(1000):
        alpha = rng.uniform(0.1, 0.9)
        theta = rng.uniform(0.1, math.pi - 0.1)
        geom = TorusGeometry.from_alpha(alpha)
        rho = torus_rho(geom, theta)

        monge = monge_curvatures(torus_patch(geom), rho)
        closed = torus_curvatures(geom, theta)

        assert monge.k1 == pytest.approx(closed.k1, rel=1e-10)
        assert monge.k2 == pytest.approx(closed.k2, rel=1e-10, abs=1e-12)
        assert monge.Vc == pytest.approx(closed.Vc, rel=1e-10)

def test_theta_from_rho_inverts_rho():
    geom = TorusGeometry(a=0.3, R=1.0)
    for theta in (0.0, 0.4, 1.5, 2.9, math.pi):
        assert torus_theta_from_rho(geom, torus_rho(geom, theta)) == pytest.approx(theta, abs=1e-7)

def test_sphere_has_no_potential():
    """Umbilic surface: k1 = k2 = 1/R everywhere."""
    sphere = hemisphere(2.0)
    for rho in (0.1, 0.7, 1.3, 1.9):
        bundle = monge_curvatures(sphere, rho)
        assert bundle.k1 == pytest.approx(0.5, rel=1e-12)
        assert bundle.k2 == pytest.approx(0.5, rel=1e-12)
        assert abs(bundle.Vc) <= 1e-12

def test_plane_is_flat():
    bundle = monge_curvatures(plane(), 3.0)
    assert (bundle.k1, bundle.k2, bundle.H, bundle.K, bundle.Vc) == (0.0, 0.0, 0.0, 0.0, 0.0)

def test_catenoid_is_minimal():
    """H = 0, so Vc = K/2 = -c^2 / (2 rho^4)."""
    c = 0.8
    for rho in (0.9, 1.5, 4.0):
        bundle = monge_curvatures(catenoid(c), rho)
        assert abs(bundle.H) <= 1e-12
        assert bundle.Vc == pytest.approx(-c * c / (2.0 * rho ** 4), rel=1e-12)
        assert bundle.Vc == pytest.approx(bundle.K / 2.0, rel=1e-12)

def test_paraboloid_apex_is_umbilic():
    bundle = monge_curvatures(paraboloid(0.5), 1e-6)
    assert bundle.k1 == pytest.approx(bundle.k2, rel=1e-9)
    assert abs(bundle.Vc) <= 1e-12

def test_rho_must_be_positive():
    with pytest.raises(DomainError):
        monge_curvatures(plane(), 0.0)
    with pytest.raises(DomainError):
        monge_curvatures(plane(), -1.0)

def test_non_finite_derivatives_rejected():
    """Outside the hemisphere the square root is undefined."""
    with pytest.raises(NonFiniteError):
        monge_curvatures(hemisphere(1.0), 2.0)

@pytest.mark.parametrize("surface, rho", [
    (hemisphere(1.0), 1.5),
    (torus_patch(TorusGeometry(a=0.5, R=1.0)), 2.0),
    (torus_patch(TorusGeometry(a=0.5, R=1.0)), 0.2),
    (catenoid(1.0), 0.5),
], ids=["hemisphere", "torus-outside", "torus-inside", "catenoid"])
def test_factories_outside_domain_raise(surface, rho):
    with pytest.raises(NonFiniteError):
        monge_curvatures(surface, rho)

def test_complex_derivatives_rejected():
    """A float power of a negative base yields a complex value, not a crash."""
    surface = MongeSurface(
        shape=lambda rho: (1.0 - rho * rho) ** 0.5,
        shape_d1=lambda rho: -rho * (1.0 - rho * rho) ** -0.5,
        shape_d2=lambda rho: -((1.0 - rho * rho) ** -1.5),
        name="unguarded sphere",
    )
    assert isinstance(surface.shape_d2(2.0), complex)
    with pytest.raises(NonFiniteError):
        monge_curvatures(surface, 2.0)

def test_real_complex_derivatives_accepted():
    surface = MongeSurface(
        shape=lambda rho: 0.0,
        shape_d1=lambda rho: complex(0.0, 0.0),
        shape_d2=lambda rho: complex(0.0, 0.0),
    )
    assert monge_curvatures(surface, 1.0).Vc == 0.0

def test_norm_weight():
    bundle = CurvatureBundle.from_principal(2.0, 0.5)

    assert norm_weight(0.0, bundle) == 1.0
    assert norm_weight(0.1, bundle) == pytest.approx(1.0 + 2 * 0.1 * 1.25 + 0.01 * 1.0)

def test_derivative_mismatch():
    """Consistent surfaces agree with finite differences, inconsistent ones do not."""
    geom = TorusGeometry(a=0.4, R=1.0)
    assert derivative_mismatch(torus_patch(geom), 1.1) < 1e-5
    assert derivative_mismatch(paraboloid(2.0), 0.7) < 1e-6

    broken = paraboloid(2.0).copy(update={"shape_d2": lambda rho: 1.0})
    assert derivative_mismatch(broken, 0.7) > 0.1

def test_curvature_bundle_rejects_positive_potential():
    with pytest.raises(ValidationError):
        CurvatureBundle(k1=1.0, k2=1.0, H=1.0, K=1.0, Vc=0.5)

def test_curvature_bundle_rejects_inconsistent_mean():
    with pytest.raises(ValidationError):
        CurvatureBundle(k1=1.0, k2=0.0, H=1.0, K=0.0, Vc=-0.125)

def test_curvature_bundle_rejects_inconsistent_potential():
    with pytest.raises(ValidationError):
        CurvatureBundle(k1=2.0, k2=0.0, H=1.0, K=0.0, Vc=-0.1)

    bundle = CurvatureBundle(k1=2.0, k2=0.0, H=1.0, K=0.0, Vc=-0.5)
    assert bundle.Vc == -0.5

def test_torus_geometry_validation():
    geom = TorusGeometry(a=0.25, R=2.0)
    assert geom.alpha == pytest.approx(0.125)

    with pytest.raises(ValidationError):
        TorusGeometry(a=1.0, R=1.0)
    with pytest.raises(ValidationError):
        TorusGeometry(a=-0.1, R=1.0)

def test_curvature_profile_matches_pointwise():
    geom = TorusGeometry.from_alpha(0.5)
    thetas = np.linspace(0.0, 2.0 * math.pi, 9, endpoint=False)
    profile = torus_curvature_profile(geom, thetas)

    assert list(profile.columns) == ["theta", "k1", "k2", "H", "K", "Vc"]
    assert len(profile) == 9
    for row in profile.itertuples():
        bundle = torus_curvatures(geom, row.theta)
        assert row.k2 == pytest.approx(bundle.k2, abs=1e-14)
        assert row.Vc == pytest.approx(bundle.Vc, rel=1e-14)

def test_torus_potential_even_and_periodic(rng):
    geom = TorusGeometry(a=0.5, R=1.0)
    for theta in rng.uniform(0.0, 2.0 * math.pi, 200):
        vc = torus_curvatures(geom, theta).Vc
        assert torus_curvatures(geom, -theta).Vc == pytest.approx(vc, rel=1e-14)
        assert torus_curvatures(geom, theta + 2.0 * math.pi).Vc == pytest.approx(vc, rel=1e-12)

    assert torus_curvatures(geom, math.pi / 2).Vc == pytest.approx(-0.5, rel=1e-14)

def test_torus_potential_extremes():
    """Weakest at the outer equator, strongest at the inner one."""
    geom = TorusGeometry(a=0.5, R=1.0)
    thetas = np.linspace(0.0, 2.0 * math.pi, 721)
    magnitude = np.abs(torus_curvature_profile(geom, thetas)["Vc"].to_numpy())

    assert np.argmin(magnitude) in (0, 720)
    assert thetas[np.argmax(magnitude)] == pytest.approx(math.pi)

def test_potential_never_positive(rng):
    """Random points on every surface family: Vc <= 0, zero only where umbilic."""
    for _ in range(2000):
        rho = rng.uniform(0.1, 2.0)
        assert abs(monge_curvatures(plane(), rho).Vc) <= 1e-12
        assert abs(monge_curvatures(hemisphere(rng.uniform(2.1, 5.0)), rho).Vc) <= 1e-12
        assert monge_curvatures(paraboloid(rng.uniform(0.2, 3.0)), rho).Vc < 0

        c = rng.uniform(0.1, 2.0)
        assert monge_curvatures(catenoid(c), c * rng.uniform(1.01, 4.0)).Vc < 0

        geom = TorusGeometry.from_alpha(rng.uniform(0.05, 0.95))
        theta = rng.uniform(0.1, math.pi - 0.1)
        assert monge_curvatures(torus_patch(geom), torus_rho(geom, theta)).Vc < 0
