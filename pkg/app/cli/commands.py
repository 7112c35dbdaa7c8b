import logging
from typing import Tuple

from app.core.errors import SolverError, TorusSpectrumError
from app.models.operators import Parity
from app.models.run import Command, OutputFormat, RunConfig
from app.services import export_service
from app.services.eigensolver import converge_spectrum
from app.services.spectra import bound_state_count, bound_state_scan, reproduce_tables

# Configure logging
logger = logging.getLogger("commands")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_SOLVER = 3
EXIT_TABLES_FAILED = 4

def _spectrum(config: RunConfig):
    return converge_spectrum(
        config.alpha,
        config.m,
        Parity(config.parity),
        config.include_vc,
        n_start=max(8, config.n_basis),
    )

def _render(config: RunConfig) -> Tuple[str, int]:
    """Run the command and render its document; returns (text, exit code)."""
    as_json = config.output_format == OutputFormat.JSON

    if config.command == Command.SPECTRUM:
        spectrum = _spectrum(config)
        if as_json:
            return export_service.to_json(export_service.spectrum_document(spectrum)), EXIT_OK
        return export_service.to_csv(export_service.spectrum_frame(spectrum)), EXIT_OK

    if config.command == Command.WAVEFUNCTION:
        spectrum = _spectrum(config)
        if config.state_index >= len(spectrum.states):
            raise TorusSpectrumError(
                f"state {config.state_index} does not exist; the sector has {len(spectrum.states)} states"
            )
        state = spectrum.states[config.state_index]
        frame = export_service.wavefunction_frame(state, config.samples)
        if as_json:
            document = export_service.frame_document(
                frame, alpha=config.alpha, m=config.m, parity=state.parity.value,
                n_index=state.n_index, beta=state.beta,
            )
            return export_service.to_json(document), EXIT_OK
        return export_service.to_csv(frame), EXIT_OK

    if config.command == Command.CURVATURE:
        frame = export_service.curvature_frame(config.alpha, config.samples)
        if as_json:
            return export_service.to_json(export_service.frame_document(frame, alpha=config.alpha)), EXIT_OK
        return export_service.to_csv(frame), EXIT_OK

    if config.command == Command.SCAN:
        table = bound_state_scan(config.alpha, config.m_max, config.n_basis)
        if as_json:
            return export_service.to_json(export_service.scan_document(table)), EXIT_OK
        return export_service.to_csv(export_service.scan_frame(table)), EXIT_OK

    count = bound_state_count()
    report = reproduce_tables(count=count)
    for failure in report.failures():
        logger.error(f"{failure.label}: computed {failure.computed_value} vs {failure.paper_value} "
                     f"(tolerance {failure.tolerance})")
    code = EXIT_OK if report.passed else EXIT_TABLES_FAILED
    if as_json:
        return export_service.to_json(export_service.report_document(report, count)), code
    return export_service.to_csv(export_service.report_frame(report)), code

def run(config: RunConfig) -> int:
    """
    Execute one validated invocation and emit its document.

    Returns:
        int: 0 on success, 2 for invalid input, 3 for solver failures,
        4 when verify-tables has a failing target
    """
    try:
        text, code = _render(config)
    except SolverError as e:
        logger.error(f"Solver failure: {e}")
        return EXIT_SOLVER
    except TorusSpectrumError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_INVALID

    try:
        export_service.write_document(text, config.output_path)
    except OSError as e:
        logger.error(f"Cannot write {config.output_path}: {e}")
        return EXIT_INVALID
    return code
