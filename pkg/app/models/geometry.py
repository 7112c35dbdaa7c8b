import math
from typing import Callable, Optional

from pydantic import BaseModel, root_validator

class MongeSurface(BaseModel):
    """Surface of revolution z = S(rho) with its first two derivatives."""
    shape: Callable[[float], float]
    shape_d1: Callable[[float], float]
    shape_d2: Callable[[float], float]
    name: str = "custom"

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

class TorusGeometry(BaseModel):
    """Torus with minor radius a and major radius R."""
    a: float
    R: float
    alpha: Optional[float] = None

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def check_embedding(cls, values):
        a, R = values["a"], values["R"]
        if not (a > 0 and R > 0):
            raise ValueError(f"radii must be positive, got a={a}, R={R}")
        alpha = a / R
        if values.get("alpha") is not None and values["alpha"] != alpha:
            raise ValueError(f"alpha={values['alpha']} does not equal a/R={alpha}")
        if not alpha < 1:
            raise ValueError(f"alpha={alpha} self-intersects (needs alpha < 1)")
        values["alpha"] = alpha
        return values

    @classmethod
    def from_alpha(cls, alpha: float, R: float = 1.0) -> "TorusGeometry":
        """Build the torus with aspect ratio alpha; R defaults to the unit used by the tables."""
        return cls(a=alpha * R, R=R)

    def F(self, theta: float) -> float:
        """Distance of the surface point at theta from the symmetry axis."""
        return self.R + self.a * math.cos(theta)

class CurvatureBundle(BaseModel):
    """Principal, mean and Gaussian curvature plus the curvature potential at a point."""
    k1: float
    k2: float
    H: float
    K: float
    Vc: float

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def check_consistency(cls, values):
        k1, k2 = values["k1"], values["k2"]
        scale = max(abs(k1), abs(k2), 1e-300)
        if abs(values["H"] - (k1 + k2) / 2) > 1e-14 * scale:
            raise ValueError("H must equal (k1 + k2) / 2")
        if abs(values["K"] - k1 * k2) > 1e-14 * scale * scale:
            raise ValueError("K must equal k1 * k2")
        if values["Vc"] > 0:
            raise ValueError(f"curvature potential must be non-positive, got {values['Vc']}")
        H, K = values["H"], values["K"]
        if abs(values["Vc"] + (H * H - K) / 2) > 1e-14 * max(H * H, abs(K), 1e-300):
            raise ValueError(f"Vc must equal -(H^2 - K) / 2, got {values['Vc']} for H={H}, K={K}")
        return values

    @classmethod
    def from_principal(cls, k1: float, k2: float, Vc: Optional[float] = None) -> "CurvatureBundle":
        """Assemble the bundle; Vc defaults to -((k1 - k2) / 2)^2 / 2 = -(H^2 - K) / 2."""
        if Vc is None:
            Vc = -0.125 * (k1 - k2) ** 2
        return cls(k1=k1, k2=k2, H=0.5 * (k1 + k2), K=k1 * k2, Vc=Vc)
