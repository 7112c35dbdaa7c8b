from typing import List

import numpy as np
from pydantic import BaseModel, validator

from app.models.operators import Parity

class Eigenstate(BaseModel):
    """One normalized angular eigenfunction psi(theta) of a sector."""
    beta: float
    m: int
    parity: Parity
    n_index: int
    coeffs: np.ndarray
    node_count: int
    norm_constant: float
    degenerate: bool = False

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @property
    def degeneracy(self) -> int:
        """Azimuthal degeneracy: the +m and -m states share beta."""
        return 1 if self.m == 0 else 2

    @property
    def is_bound(self) -> bool:
        return self.beta < 0

class Spectrum(BaseModel):
    """Eigenstates of one (m, parity) sector at one truncation."""
    alpha: float
    m: int
    parity: Parity
    include_vc: bool
    states: List[Eigenstate]
    truncation_used: int
    converged: bool

    class Config:
        allow_mutation = False
        arbitrary_types_allowed = True

    @validator("states")
    def check_sorted(cls, v):
        betas = [state.beta for state in v]
        if betas != sorted(betas):
            raise ValueError("states must be sorted ascending by beta")
        return v

    @property
    def betas(self) -> np.ndarray:
        return np.array([state.beta for state in self.states])

    @property
    def ground(self) -> Eigenstate:
        return self.states[0]
