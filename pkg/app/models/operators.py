from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, validator

class Parity(str, Enum):
    """Behaviour under theta -> -theta."""
    EVEN = "even"
    ODD = "odd"

class Basis(str, Enum):
    """Basis the matrices of an OperatorPair act on."""
    EXPONENTIAL = "exponential"   # e^{i n theta}, n = -N..N
    COSINE = "cosine"             # 1, cos theta, ..., cos N theta
    SINE = "sine"                 # sin theta, ..., sin N theta

class ModeSpec(BaseModel):
    """Azimuthal sector, parity and truncation of one angular problem."""
    m: int
    n_basis: int
    include_vc: bool = True
    parity: Optional[Parity] = None

    class Config:
        allow_mutation = False

    @validator("m")
    def check_m(cls, v):
        if v < 0:
            raise ValueError(f"m must be >= 0 (the -m sector is identical), got {v}")
        return v

    @validator("n_basis")
    def check_n_basis(cls, v):
        if v < 4:
            raise ValueError(f"n_basis must be >= 4, got {v}")
        return v

    @property
    def degeneracy(self) -> int:
        return 1 if self.m == 0 else 2

class OperatorPair(BaseModel):
    """Matrices of the generalized problem A c = beta B c."""
    a_matrix: np.ndarray
    b_matrix: np.ndarray
    spec: ModeSpec
    alpha: float
    basis: Basis = Basis.EXPONENTIAL

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @validator("b_matrix")
    def check_shapes(cls, v, values):
        a = values.get("a_matrix")
        if a is not None and (a.shape != v.shape or v.shape[0] != v.shape[1]):
            raise ValueError(f"A {a.shape} and B {v.shape} must be equal square matrices")
        return v

    @property
    def size(self) -> int:
        return self.b_matrix.shape[0]
