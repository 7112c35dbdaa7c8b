import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from app.models.geometry import TorusGeometry
from app.models.report import BoundStateCountReport, BoundStateTable, TableDiffReport
from app.models.spectrum import Eigenstate, Spectrum
from app.services.eigensolver import sample_wavefunction
from app.services.geometry import torus_curvature_profile
from app.services.spectra import cutoff_m

# Configure logging
logger = logging.getLogger("export_service")

FLOAT_FORMAT = "%.10g"

def _round(value: Optional[float]) -> Optional[float]:
    """Round to 10 significant digits so repeated runs print identical text."""
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(FLOAT_FORMAT % value)

def uniform_grid(samples: int) -> np.ndarray:
    """Closed-open grid of `samples` angles on [0, 2 pi)."""
    return 2.0 * np.pi * np.arange(samples) / samples

def spectrum_document(spectrum: Spectrum) -> Dict[str, Any]:
    return {
        "alpha": _round(spectrum.alpha),
        "m": spectrum.m,
        "parity": spectrum.parity.value,
        "include_vc": spectrum.include_vc,
        "truncation": spectrum.truncation_used,
        "converged": spectrum.converged,
        "states": [
            {
                "n_index": state.n_index,
                "beta": _round(state.beta),
                "degeneracy": state.degeneracy,
                "norm_constant": _round(state.norm_constant),
                "coeffs": [_round(value) for value in state.coeffs],
                "node_count": state.node_count,
            }
            for state in spectrum.states
        ],
    }

def scan_document(table: BoundStateTable) -> Dict[str, Any]:
    return {
        "alpha": _round(table.alpha),
        "m_max": table.m_max,
        "cutoff_m": cutoff_m(table.alpha),
        "total_count_sectors": table.total_count_sectors,
        "total_count_with_degeneracy": table.total_count_with_degeneracy,
        "negative_parity_found": table.negative_parity_found,
        "entries": [
            {
                "m": entry.m,
                "parity": entry.parity.value,
                "n_index": entry.n_index,
                "beta": _round(entry.beta),
                "degeneracy": entry.degeneracy,
                "coeffs": [_round(value) for value in entry.coeffs],
            }
            for entry in table.entries
        ],
    }

def report_document(report: TableDiffReport, count: Optional[BoundStateCountReport] = None) -> Dict[str, Any]:
    document = {
        "passed": report.passed,
        "entries": [
            {
                "label": entry.label,
                "paper_value": _round(entry.paper_value),
                "computed_value": _round(entry.computed_value),
                "abs_diff": _round(entry.abs_diff),
                "tolerance": _round(entry.tolerance),
                "passed": entry.passed,
                "disputed": entry.disputed,
                "note": entry.note,
            }
            for entry in report.entries
        ],
    }
    if count is not None:
        document["bound_state_count"] = {
            key: _round(value) if isinstance(value, float) else value
            for key, value in count.dict().items()
        }
    return document

def to_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"

def wavefunction_frame(state: Eigenstate, samples: int) -> pd.DataFrame:
    """psi(theta) of a normalized state on the uniform grid."""
    theta = uniform_grid(samples)
    return pd.DataFrame({"theta": theta, "psi": sample_wavefunction(state, theta)})

def curvature_frame(alpha: float, samples: int) -> pd.DataFrame:
    """Closed-form curvature profile of the R = 1 torus on the uniform grid."""
    return torus_curvature_profile(TorusGeometry.from_alpha(alpha), uniform_grid(samples))

def spectrum_frame(spectrum: Spectrum) -> pd.DataFrame:
    """One row per state; coefficients are only carried by the JSON document."""
    return pd.DataFrame(
        [
            {
                "n_index": state.n_index,
                "beta": state.beta,
                "degeneracy": state.degeneracy,
                "norm_constant": state.norm_constant,
                "node_count": state.node_count,
            }
            for state in spectrum.states
        ],
        columns=["n_index", "beta", "degeneracy", "norm_constant", "node_count"],
    )

def scan_frame(table: BoundStateTable) -> pd.DataFrame:
    columns = ["m", "parity", "n_index", "beta", "degeneracy"]
    return pd.DataFrame(
        [{**entry.dict(include=set(columns)), "parity": entry.parity.value} for entry in table.entries],
        columns=columns,
    )

def report_frame(report: TableDiffReport) -> pd.DataFrame:
    columns = ["label", "paper_value", "computed_value", "abs_diff", "tolerance", "passed", "disputed", "note"]
    return pd.DataFrame([entry.dict() for entry in report.entries], columns=columns)

def frame_document(frame: pd.DataFrame, **meta: Any) -> Dict[str, Any]:
    """JSON rendering of a sampled profile: metadata followed by one object per row."""
    rows = [
        {key: _round(value) if isinstance(value, float) else value for key, value in record.items()}
        for record in frame.to_dict(orient="records")
    ]
    return {**{key: _round(value) if isinstance(value, float) else value for key, value in meta.items()}, "rows": rows}

def to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")

def write_document(text: str, output_path: Optional[str] = None) -> None:
    """
    Write a rendered document to stdout or to a file.

    Args:
        text (str): Rendered JSON or CSV
        output_path (str, optional): Destination file; stdout when omitted
    """
    if output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    path = Path(output_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"Wrote {len(text)} characters to {path}")
