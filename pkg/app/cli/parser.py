import argparse
from typing import List, Optional

from app.core.config import settings
from app.models.operators import Parity
from app.models.run import Command, OutputFormat, RunConfig

DESCRIPTION = "Bound states of a particle constrained to a torus surface."

def build_parser() -> argparse.ArgumentParser:
    """
    Build the command-line parser.

    Every subcommand accepts the same flags; RunConfig decides which ones a
    command needs. Abbreviated and unknown flags are rejected.
    """
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--alpha", type=float, help="aspect ratio a/R in (0, 1)")
    common.add_argument("--m", type=int, default=0, help="azimuthal index (default 0)")
    common.add_argument("--m-max", type=int, default=12, help="highest m scanned (default 12)")
    common.add_argument("--n-basis", type=int, default=settings.N_BASIS,
                        help=f"Fourier truncation N (default {settings.N_BASIS})")
    common.add_argument("--no-curvature", dest="include_vc", action="store_false",
                        help="drop the curvature potential (free problem)")
    common.add_argument("--parity", choices=[parity.value for parity in Parity], default=Parity.EVEN.value,
                        help="parity sector (default even)")
    common.add_argument("--state", dest="state_index", type=int, default=0,
                        help="index of the state within its sector (default 0)")
    common.add_argument("--samples", type=int, default=settings.DEFAULT_SAMPLES,
                        help=f"grid size on [0, 2 pi) (default {settings.DEFAULT_SAMPLES})")
    formats = common.add_mutually_exclusive_group()
    formats.add_argument("--json", dest="output_format", action="store_const", const=OutputFormat.JSON.value)
    formats.add_argument("--csv", dest="output_format", action="store_const", const=OutputFormat.CSV.value)
    common.add_argument("--out", dest="output_path", metavar="PATH", help="write to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="torus-spectrum", description=DESCRIPTION, allow_abbrev=False)
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True
    commands.add_parser(Command.SPECTRUM.value, parents=[common], allow_abbrev=False,
                        help="converged spectrum of one (m, parity) sector")
    commands.add_parser(Command.SCAN.value, parents=[common], allow_abbrev=False,
                        help="all bound states for m = 0..m-max")
    commands.add_parser(Command.WAVEFUNCTION.value, parents=[common], allow_abbrev=False,
                        help="psi(theta) of one state on a uniform grid")
    commands.add_parser(Command.CURVATURE.value, parents=[common], allow_abbrev=False,
                        help="curvature profile of the R = 1 torus")
    commands.add_parser(Command.VERIFY_TABLES.value, parents=[common], allow_abbrev=False,
                        help="recompute the published tables and report differences")
    return parser

def parse_args(argv: Optional[List[str]] = None) -> RunConfig:
    """
    Parse argv into a validated RunConfig.

    Raises:
        SystemExit: On unknown flags or malformed values (code 2, from argparse)
        pydantic.ValidationError: If the values violate a RunConfig invariant
    """
    namespace = build_parser().parse_args(argv)
    return RunConfig(**vars(namespace))
