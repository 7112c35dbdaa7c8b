from typing import Dict, List, Optional

from pydantic import BaseModel

from app.models.operators import Parity

class BoundStateEntry(BaseModel):
    """A single beta < 0 state found by a scan."""
    m: int
    parity: Parity
    n_index: int
    beta: float
    degeneracy: int
    coeffs: List[float]

class BoundStateTable(BaseModel):
    """Bound states of one torus over the azimuthal sectors 0..m_max."""
    alpha: float
    m_max: int
    entries: List[BoundStateEntry]
    total_count_sectors: int
    total_count_with_degeneracy: int
    sector_minima: Dict[str, float] = {}

    @property
    def negative_parity_found(self) -> bool:
        return any(entry.parity == Parity.ODD for entry in self.entries)

    @property
    def bound_sectors(self) -> List[int]:
        return sorted({entry.m for entry in self.entries})

class TableDiffEntry(BaseModel):
    """Comparison of one computed number with its reference value."""
    label: str
    paper_value: Optional[float] = None
    computed_value: float
    abs_diff: Optional[float] = None
    tolerance: Optional[float] = None
    passed: bool = True
    disputed: bool = False
    note: str = ""

class TableDiffReport(BaseModel):
    """Collection of comparisons; disputed entries never fail the report."""
    entries: List[TableDiffEntry] = []

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries if not entry.disputed)

    def failures(self) -> List[TableDiffEntry]:
        return [entry for entry in self.entries if not entry.passed and not entry.disputed]

    def find(self, label: str) -> TableDiffEntry:
        for entry in self.entries:
            if entry.label == label:
                return entry
        raise KeyError(label)

class BoundStateCountReport(BaseModel):
    """Computed bound-state count against the published and variational counts."""
    alpha: float
    m_max: int
    computed_sectors: int
    computed_with_degeneracy: int
    published_total: int
    variational_sectors: int
    variational_with_degeneracy: int
    agrees_with_published: bool
    agrees_with_variational: bool
