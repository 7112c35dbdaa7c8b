from enum import Enum
from typing import Optional

from pydantic import BaseModel, root_validator

from app.models.operators import Parity

class Command(str, Enum):
    SPECTRUM = "spectrum"
    SCAN = "scan"
    WAVEFUNCTION = "wavefunction"
    CURVATURE = "curvature"
    VERIFY_TABLES = "verify-tables"

class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"

# Default document format when neither --json nor --csv is given
DEFAULT_FORMATS = {
    Command.SPECTRUM: OutputFormat.JSON,
    Command.SCAN: OutputFormat.JSON,
    Command.WAVEFUNCTION: OutputFormat.CSV,
    Command.CURVATURE: OutputFormat.CSV,
    Command.VERIFY_TABLES: OutputFormat.JSON,
}

class RunConfig(BaseModel):
    """One validated command-line invocation."""
    command: Command
    alpha: Optional[float] = None
    m: int = 0
    m_max: int = 0
    n_basis: int = 64
    include_vc: bool = True
    parity: Parity = Parity.EVEN
    state_index: int = 0
    samples: int = 256
    output_format: Optional[OutputFormat] = None
    output_path: Optional[str] = None

    class Config:
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def check_ranges(cls, values):
        command = values["command"]
        alpha = values.get("alpha")
        if command != Command.VERIFY_TABLES:
            if alpha is None:
                raise ValueError(f"{command.value} requires --alpha")
            if not 0 < alpha < 1:
                raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
        if values["m"] < 0 or values["m_max"] < 0:
            raise ValueError("m and m_max must be >= 0")
        if values["n_basis"] < 4:
            raise ValueError(f"n_basis must be >= 4, got {values['n_basis']}")
        if values["state_index"] < 0:
            raise ValueError(f"state index must be >= 0, got {values['state_index']}")
        min_samples = 16 if command == Command.WAVEFUNCTION else 1
        if values["samples"] < min_samples:
            raise ValueError(f"{command.value} needs at least {min_samples} samples")
        if values.get("output_format") is None:
            values["output_format"] = DEFAULT_FORMATS[command]
        return values
