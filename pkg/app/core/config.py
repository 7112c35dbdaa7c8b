import os
from pathlib import Path
from pydantic import BaseSettings
from dotenv import load_dotenv

# Load environment variables from .env file
env_path = Path(".") / ".env"
load_dotenv(dotenv_path=env_path)

class Settings(BaseSettings):
    # Basis truncation
    N_BASIS: int = int(os.getenv("N_BASIS", "64"))
    N_MAX: int = int(os.getenv("N_MAX", "1024"))

    # Convergence control
    CONVERGENCE_TOL: float = float(os.getenv("CONVERGENCE_TOL", "1e-8"))
    CONVERGENCE_WINDOW: int = int(os.getenv("CONVERGENCE_WINDOW", "5"))

    # Solver checks
    REALITY_TOL: float = float(os.getenv("REALITY_TOL", "1e-8"))
    RESIDUAL_TOL: float = float(os.getenv("RESIDUAL_TOL", "1e-9"))
    BOUND_TOL: float = float(os.getenv("BOUND_TOL", "1e-9"))

    # Grids
    NODE_SAMPLES: int = int(os.getenv("NODE_SAMPLES", "4096"))
    QUADRATURE_POINTS: int = int(os.getenv("QUADRATURE_POINTS", "4096"))
    DEFAULT_SAMPLES: int = int(os.getenv("DEFAULT_SAMPLES", "256"))

    # Published-table comparison
    GOLDEN_BETA_TOL: float = float(os.getenv("GOLDEN_BETA_TOL", "2e-3"))
    GOLDEN_COEFF_RTOL: float = float(os.getenv("GOLDEN_COEFF_RTOL", "2e-2"))

    # Sector scans
    SCAN_WORKERS: int = int(os.getenv("SCAN_WORKERS", "4"))

    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")

    class Config:
        env_file = ".env"

settings = Settings()
