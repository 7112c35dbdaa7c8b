import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.config import settings
from app.core.errors import InvalidAlphaError
from app.models.operators import ModeSpec, Parity
from app.models.report import (
    BoundStateCountReport,
    BoundStateEntry,
    BoundStateTable,
    TableDiffEntry,
    TableDiffReport,
)
from app.models.spectrum import Eigenstate, Spectrum
from app.services.eigensolver import converge_spectrum, solve_pair, solve_sector, state_overlap
from app.services.operator_assembly import assemble_full, parity_project, surface_gram
from app.services.reference_data import PUBLISHED_TOTAL_AT_ALPHA_005, PublishedState, published_states

# Configure logging
logger = logging.getLogger("spectra")

def cutoff_m(alpha: float) -> int:
    """
    Largest azimuthal index that still binds, i.e. the largest m with 2 m alpha < 1.

    At alpha = 1/(2m) the sector is exactly the free m = 0 problem (lowest beta 0),
    so the boundary itself does not bind. Returns 0 for alpha >= 1/2.
    """
    if not 0 < alpha < 1:
        raise InvalidAlphaError(f"alpha must lie in (0, 1), got {alpha}")
    m = 0
    while (m + 1) * alpha < 0.5:
        m += 1
    return m

def _solve_sectors(alpha: float, keys: List[Tuple[int, Parity]], include_vc: bool,
                   n_basis: Optional[int]) -> Dict[Tuple[int, Parity], Spectrum]:
    """Solve independent sectors concurrently; results are keyed, so merge order is fixed."""
    workers = max(1, min(settings.SCAN_WORKERS, len(keys)))
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = {
            key: executor.submit(solve_sector, alpha, key[0], key[1], include_vc, n_basis)
            for key in keys
        }
        return {key: future.result() for key, future in futures.items()}

def bound_state_scan(alpha: float, m_max: int, n_basis: Optional[int] = None) -> BoundStateTable:
    """
    Collect every beta < 0 state for m = 0..m_max with the curvature potential on.

    Both parity sectors are solved; odd-parity bound states are reported if they
    occur rather than excluded.

    Args:
        alpha (float): Aspect ratio in (0, 1)
        m_max (int): Highest azimuthal index scanned
        n_basis (int, optional): Truncation. Defaults to settings.N_BASIS.

    Returns:
        BoundStateTable: Entries sorted by (m, beta)
    """
    if not 0 < alpha < 1:
        raise InvalidAlphaError(f"alpha must lie in (0, 1), got {alpha}")
    if m_max < 0:
        raise ValueError(f"m_max must be >= 0, got {m_max}")

    keys = [(m, parity) for m in range(m_max + 1) for parity in (Parity.EVEN, Parity.ODD)]
    logger.info(f"Scanning alpha={alpha} over {len(keys)} sectors")
    spectra = _solve_sectors(alpha, keys, True, n_basis)

    entries = []
    sector_minima = {}
    for (m, parity), spectrum in sorted(spectra.items(), key=lambda item: (item[0][0], item[0][1].value)):
        sector_minima[f"{m}:{parity.value}"] = spectrum.ground.beta
        for state in spectrum.states:
            if state.beta >= -settings.BOUND_TOL:
                break
            if parity == Parity.ODD:
                logger.warning(f"Odd-parity bound state at alpha={alpha}, m={m}: beta={state.beta}")
            entries.append(BoundStateEntry(
                m=m,
                parity=parity,
                n_index=state.n_index,
                beta=state.beta,
                degeneracy=state.degeneracy,
                coeffs=[float(value) for value in state.coeffs],
            ))

    entries.sort(key=lambda entry: (entry.m, entry.beta))
    return BoundStateTable(
        alpha=alpha,
        m_max=m_max,
        entries=entries,
        total_count_sectors=len(entries),
        total_count_with_degeneracy=sum(entry.degeneracy for entry in entries),
        sector_minima=sector_minima,
    )

def bound_state_count(alpha: float = 0.05, m_max: int = 12) -> BoundStateCountReport:
    """Compare the scanned bound-state count with the published total and the variational count."""
    table = bound_state_scan(alpha, m_max)
    cutoff = cutoff_m(alpha)
    report = BoundStateCountReport(
        alpha=alpha,
        m_max=m_max,
        computed_sectors=table.total_count_sectors,
        computed_with_degeneracy=table.total_count_with_degeneracy,
        published_total=PUBLISHED_TOTAL_AT_ALPHA_005,
        variational_sectors=cutoff + 1,
        variational_with_degeneracy=1 + 2 * cutoff,
        agrees_with_published=PUBLISHED_TOTAL_AT_ALPHA_005 in (table.total_count_sectors, table.total_count_with_degeneracy),
        agrees_with_variational=table.total_count_sectors == cutoff + 1,
    )
    if not report.agrees_with_published:
        logger.warning(
            f"alpha={alpha}: {report.computed_sectors} bound sectors "
            f"({report.computed_with_degeneracy} with degeneracy) vs published total {report.published_total}"
        )
    return report

def magic_radius_check(m: int, n_basis: Optional[int] = None) -> TableDiffReport:
    """
    Check that the constrained m-sector at alpha = 1/(2m) is the free m = 0 problem.

    Compares both matrices entry by entry and the spectra of both parity sectors.
    """
    if m < 1:
        raise ValueError(f"magic radii exist for m >= 1, got {m}")
    alpha = 1.0 / (2 * m)
    n_basis = n_basis or settings.N_BASIS
    constrained = assemble_full(alpha, ModeSpec(m=m, n_basis=n_basis, include_vc=True))
    free = assemble_full(alpha, ModeSpec(m=0, n_basis=n_basis, include_vc=False))

    entries = []
    for name, left, right in (("A", constrained.a_matrix, free.a_matrix), ("B", constrained.b_matrix, free.b_matrix)):
        diff = float(np.max(np.abs(left - right)))
        entries.append(TableDiffEntry(
            label=f"magic m={m} matrix {name}",
            paper_value=0.0,
            computed_value=diff,
            abs_diff=diff,
            tolerance=0.0,
            passed=bool(np.array_equal(left, right)),
        ))

    for parity in (Parity.EVEN, Parity.ODD):
        left = np.array([beta for beta, _ in solve_pair(parity_project(constrained, parity))])
        right = np.array([beta for beta, _ in solve_pair(parity_project(free, parity))])
        diff = float(np.max(np.abs(left - right)))
        entries.append(TableDiffEntry(
            label=f"magic m={m} {parity.value} spectrum",
            paper_value=0.0,
            computed_value=diff,
            abs_diff=diff,
            tolerance=1e-12,
            passed=diff <= 1e-12,
        ))
        if parity == Parity.EVEN:
            entries.append(TableDiffEntry(
                label=f"magic m={m} lowest beta",
                paper_value=0.0,
                computed_value=float(left[0]),
                abs_diff=abs(float(left[0])),
                tolerance=settings.BOUND_TOL,
                passed=abs(float(left[0])) <= settings.BOUND_TOL,
            ))
    return TableDiffReport(entries=entries)

def _match_by_beta(spectrum: Spectrum, beta: float) -> Eigenstate:
    """State whose beta is closest to the published one; subscripts are not trusted."""
    return min(spectrum.states, key=lambda state: abs(state.beta - beta))

def _compare(label: str, published: float, computed: float, tolerance: float,
             disputed: bool = False, note: str = "") -> TableDiffEntry:
    diff = abs(computed - published)
    return TableDiffEntry(
        label=label,
        paper_value=published,
        computed_value=computed,
        abs_diff=diff,
        tolerance=tolerance,
        passed=diff <= tolerance,
        disputed=disputed,
        note=note,
    )

def _published_state_entries(row: PublishedState) -> List[TableDiffEntry]:
    spectrum = converge_spectrum(row.alpha, row.m, Parity.EVEN, row.include_vc, n_start=16)
    state = _match_by_beta(spectrum, row.beta)
    coeffs = np.asarray(state.coeffs)

    entries = [_compare(
        f"{row.label} beta",
        row.beta,
        state.beta,
        row.beta_tol or settings.GOLDEN_BETA_TOL,
        disputed="beta" in row.disputed,
        note=row.note if "beta" in row.disputed else "",
    )]
    if row.converged_beta is not None:
        entries.append(_compare(f"{row.label} beta converged", row.converged_beta, state.beta, 1e-6))
    elif "beta" in row.disputed:
        oracle = (row.m * row.alpha) ** 2
        entries.append(_compare(f"{row.label} beta vs m^2 alpha^2", oracle, state.beta, row.beta_tol or settings.GOLDEN_BETA_TOL))

    norm_tol = 1e-3 if len(row.bracket) == 1 else settings.GOLDEN_COEFF_RTOL * abs(row.norm_value)
    entries.append(_compare(
        f"{row.label} norm",
        row.norm_value,
        float(coeffs[0]),
        norm_tol,
        disputed="norm" in row.disputed,
        note=row.note if "norm" in row.disputed else "",
    ))

    for order, ratio in enumerate(row.ratios, start=1):
        tolerance = max(settings.GOLDEN_COEFF_RTOL * abs(ratio), 1e-4 / abs(row.bracket[0]))
        entries.append(_compare(
            f"{row.label} cos{order}/cos0",
            ratio,
            float(coeffs[order] / coeffs[0]),
            tolerance,
            disputed="series" in row.disputed,
            note=row.note if "series" in row.disputed else "",
        ))
    return entries

def published_normalization(row: PublishedState) -> float:
    """Integral of the published series under the R = 1 surface measure (1 for a consistent row)."""
    coeffs = row.prefactor * np.asarray(row.bracket)
    gram = surface_gram(row.alpha, Parity.EVEN, len(coeffs) - 1)
    return float(2.0 * math.pi * row.alpha * coeffs @ gram @ coeffs)

def verify_published_normalization() -> Dict[str, float]:
    """Normalization integral of every published series, keyed by row label."""
    return {row.label: published_normalization(row) for row in published_states()}

def ground_state_comparison(alpha: float, n_basis: Optional[int] = None) -> List[TableDiffEntry]:
    """
    Overlap of the m = 0 bound state with the two candidate free reference states.

    The free spectrum offers the constant state (beta = 0) and the lowest
    non-constant state; both overlaps are reported.
    """
    bound = solve_sector(alpha, 0, Parity.EVEN, True, n_basis).ground
    free = solve_sector(alpha, 0, Parity.EVEN, False, n_basis)
    entries = []
    for name, reference in (("constant", free.states[0]), ("lowest non-constant", free.states[1])):
        overlap = state_overlap(bound, reference, alpha)
        entries.append(TableDiffEntry(
            label=f"alpha={alpha:g} bound ground overlap with free {name} state",
            computed_value=overlap,
            note=f"free beta={reference.beta:.6g}",
        ))
    return entries

def reproduce_tables(count: Optional[BoundStateCountReport] = None) -> TableDiffReport:
    """
    Recompute every published eigenvalue and wave-function coefficient.

    Coefficients are compared as ratios to the leading term plus the normalized
    leading coefficient, so the bracket scaling of the tables does not matter.
    Mismatches become failed entries; disputed rows are recorded but never fail.
    """
    entries = []
    for row in published_states():
        try:
            entries.extend(_published_state_entries(row))
            entries.append(TableDiffEntry(
                label=f"{row.label} published normalization",
                paper_value=1.0,
                computed_value=published_normalization(row),
                note="integral of the listed series; informational",
            ))
        except Exception as e:
            logger.exception(f"Error reproducing {row.label}: {e}")
            entries.append(TableDiffEntry(
                label=f"{row.label} beta",
                paper_value=row.beta,
                computed_value=float("nan"),
                passed=False,
                note=f"solve failed: {e}",
            ))

    for alpha in (0.75, 0.5, 0.25, 0.05):
        entries.extend(ground_state_comparison(alpha))

    count = count or bound_state_count()
    entries.append(TableDiffEntry(
        label=f"alpha={count.alpha:g} bound sectors",
        paper_value=float(count.published_total),
        computed_value=float(count.computed_sectors),
        abs_diff=float(abs(count.computed_sectors - count.published_total)),
        passed=count.agrees_with_published,
        disputed=not count.agrees_with_published,
        note=(
            f"variational count {count.variational_sectors} sectors "
            f"({count.variational_with_degeneracy} with degeneracy); "
            f"computed {count.computed_with_degeneracy} with degeneracy"
        ),
    ))

    report = TableDiffReport(entries=entries)
    logger.info(f"Table reproduction: {len(report.failures())} failures out of {len(entries)} entries")
    return report
