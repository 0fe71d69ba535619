"""
Lattice-level verification: commuting transfer matrices, the Hamiltonian's
conservation and the eigensolver's residuals, each as a Report.
"""

import logging
import time
from typing import List, Optional, Sequence, Tuple

import numpy as np

from baxter.rmatrix import RFamily
from config import get_tolerances
from lattice.basis import ClosedPathBasis, LatticeOperator, commutator_residual, translation
from lattice.hamiltonian import hamiltonian
from lattice.jacobi import Spectrum, diagonalize
from lattice.transfer import transfer_matrix
from models.schemas import Report, ResidualItem
from operators.families import TLFamily
from utils.errors import DomainError, SingularityError
from utils.logger import VerifyLogger

logger = logging.getLogger(__name__)

COMMUTE_GRID = (0.1, 0.2, 0.5)
HAMILTONIAN_W = (0.1, 0.3, 0.5)


def _report(check: str, items: List[ResidualItem], tol: float, started: float, basis: ClosedPathBasis,
            family: str, **inputs) -> Report:
    report = Report.from_items(check, items, tol, started=started, graph=basis.graph.name, family=family,
                               sites=basis.N, dimension=basis.dimension, **inputs)
    VerifyLogger.check_result(check, report.max_residual, tol, report.passed)
    return report


def check_commuting(R: RFamily, basis: ClosedPathBasis, grid: Optional[Sequence[Tuple[float, float]]] = None,
                    tol: Optional[float] = None) -> Report:
    """
    Relative commutator residual of M(z), M(w) over the grid, plus ||M(0) - translation||_max
    and the basis-count identity.
    """
    tol = tol if tol is not None else get_tolerances()["commute"]
    grid = grid if grid is not None else [(z, w) for z in COMMUTE_GRID for w in COMMUTE_GRID]
    started = time.perf_counter()

    expected = np.trace(np.linalg.matrix_power(basis.graph.adjacency_matrix(), basis.N))
    items = [ResidualItem(item="basis count vs trace(Y^N)", residual=float(abs(basis.dimension - expected)))]
    P = translation(basis)
    M0 = transfer_matrix(R, 0.0, basis)
    items.append(ResidualItem(item="M(0) - translation",
                              residual=float(np.max(np.abs(M0.matrix - P.matrix), initial=0.0))))
    for z, w in grid:
        label = f"[M({z:.6g}), M({w:.6g})]"
        try:
            value = commutator_residual(transfer_matrix(R, z, basis), transfer_matrix(R, w, basis))
        except (SingularityError, DomainError) as e:
            VerifyLogger.skipped("commute", label, str(e))
            items.append(ResidualItem(item=label, skipped=True, reason=str(e)))
            continue
        items.append(ResidualItem(item=label, residual=value))
    return _report("commute", items, tol, started, basis, R.label, grid=[list(g) for g in grid])


def check_hamiltonian(family: TLFamily, R: RFamily, basis: ClosedPathBasis,
                      ws: Sequence[float] = HAMILTONIAN_W, tol: Optional[float] = None) -> Report:
    """[H, M(w)] per w, H - H^T and [H, translation]."""
    tol = tol if tol is not None else get_tolerances()["commute"]
    started = time.perf_counter()
    H = hamiltonian(family, basis)
    items = [
        ResidualItem(item="H - H^T", residual=float(np.max(np.abs(H.matrix - H.matrix.T), initial=0.0))),
        ResidualItem(item="[H, translation]", residual=commutator_residual(H, translation(basis))),
    ]
    for w in ws:
        items.append(ResidualItem(item=f"[H, M({w:.6g})]",
                                  residual=commutator_residual(H, transfer_matrix(R, w, basis))))
    return _report("hamiltonian", items, tol, started, basis, family.kind, w=list(ws))


def check_spectrum(op: LatticeOperator, expected: Optional[Sequence[float]] = None,
                   tol: Optional[float] = None) -> Tuple[Report, Spectrum]:
    """
    Jacobi reconstruction and orthogonality residuals; with `expected`, also
    the distance of each sorted eigenvalue from its expected value.
    """
    tolerances = get_tolerances()
    tol = tol if tol is not None else (tolerances["spectrum"] if expected is not None else tolerances["jacobi"])
    started = time.perf_counter()
    spectrum = diagonalize(op, tol=tolerances["jacobi"])
    items = [
        ResidualItem(item="reconstruction", residual=spectrum.reconstruction_residual),
        ResidualItem(item="orthogonality", residual=spectrum.orthogonality_residual),
    ]
    if expected is not None:
        targets = sorted(expected)
        if len(targets) != len(spectrum.eigenvalues):
            items.append(ResidualItem(item="eigenvalue count", residual=float("inf")))
        else:
            for k, (got, want) in enumerate(zip(spectrum.eigenvalues, targets)):
                items.append(ResidualItem(item=f"eigenvalue[{k}]={want:.6g}", residual=float(abs(got - want))))
    check = "spectrum" if expected is not None else "jacobi"
    report = _report(check, items, tol, started, op.basis, op.label, sweeps=spectrum.sweeps,
                     eigenvalues=[float(v) for v in spectrum.eigenvalues])
    return report, spectrum
