"""
LangGraph workflow for the acceptance battery.
Runs the verification groups as an ordered chain of nodes over SuiteState.

NODES (in order):
1. prepare       → activates the tolerance profile
2. catalog       → Perron-Frobenius eigenvalues and eigenvector table rows
3. tl_local      → local dynamical TL relations (ADE, affine, lines, elliptic)
4. functional    → functional relation per parameterization, elliptic obstruction
5. ybe           → dynamical Yang-Baxter sweeps (graph, line and ABF weights)
6. hecke         → Hecke relations, Baxterized Hecke R, Murphy elements
7. bmw           → Hecke-degenerate BMW relations, two-parameter YBE
8. lattice       → commuting transfer matrices, Hamiltonian, eigensolver
9. degeneration  → elliptic to trigonometric limit

EXPORTS:
- create_suite_workflow: compiled graph
- run_suite: runs the battery and returns a SuiteSummary
"""

import logging
import time
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from langgraph.graph import END, StateGraph

from baxter import (
    SpectralParam,
    abf_family,
    baxterize_Hecke,
    baxterize_TL,
    check_degeneration,
    check_dYBE,
    check_dYBE_2param,
    check_functional_relation,
    check_obstruction,
    sample_pairs,
    sigma_from_hecke,
)
from catalog import build_diagram, compare_with_table, coxeter_number, pf_eigen
from catalog.dynkin import AFFINE_LISTING, CLASSICAL_LISTING, diagram_name
from config import get_tolerances, set_tol_profile
from lattice import ClosedPathBasis, check_commuting, check_hamiltonian, check_spectrum, hamiltonian
from models.schemas import Report, ResidualItem, SuiteSummary
from operators import (
    TLFamily,
    bmw_from_hecke,
    build_TL_graph,
    build_TL_line,
    check_dBMW,
    check_dHecke,
    check_dTL,
    hecke_from_TL,
    murphy_check,
)
from special.theta import EllipticParams
from suite.state import SuiteState, create_initial_state
from utils.errors import ToolkitError
from utils.logger import VerifyLogger

logger = logging.getLogger(__name__)

LINE_L = 3
ELLIPTIC = EllipticParams(tau=0.8j, L=4)
ABF_SAMPLES = 5
MIN_CHECKS = 12


# ============================================================================
# SHARED FAMILIES
# ============================================================================

@lru_cache(maxsize=None)
def graph_family(family: str, L: Optional[int]) -> TLFamily:
    """TL graph family on a catalog diagram, built once per process."""
    graph = build_diagram(family, L)
    return build_TL_graph(graph, pf_eigen(graph))


def tri_param(family: str, L: Optional[int]) -> SpectralParam:
    return SpectralParam.tri(np.pi / coxeter_number(family, L))


def _guarded(label: str, build: Callable[[], List[Report]]) -> Dict[str, Any]:
    """Run one group; a toolkit error becomes a recorded suite error instead of aborting."""
    try:
        return {"reports": build(), "errors": []}
    except ToolkitError as e:
        logger.error(f"❌ {label}: {e}")
        return {"reports": [], "errors": [f"{label}: {e}"]}


# ============================================================================
# NODES
# ============================================================================

def _prepare_node(state: SuiteState) -> Dict[str, Any]:
    set_tol_profile(state["profile"])
    VerifyLogger._print_colored("SUITE", "cyan", "Starting battery", f"profile={state['profile']}")
    return {"current_node": "catalog"}


def _catalog_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        tol = get_tolerances()["pf"]
        started = time.perf_counter()
        items: List[ResidualItem] = []
        for family, L in CLASSICAL_LISTING + AFFINE_LISTING:
            name = diagram_name(family, L)
            pf = pf_eigen(build_diagram(family, L))
            affine = family.endswith("_aff")
            expected = 2.0 if affine else 2 * np.cos(np.pi / coxeter_number(family, L))
            items.append(ResidualItem(item=f"{name} eigenvalue", residual=abs(pf.eigenvalue - expected)))
            if affine or family == "A":
                rows = compare_with_table(family, L, pf, tol=tol)
                items.append(ResidualItem(item=f"{name} eigenvector", residual=max(r[3] for r in rows)))
        report = Report.from_items("perron-frobenius", items, tol, started=started, family="catalog")
        VerifyLogger.check_result(report.check, report.max_residual, tol, report.passed)
        return [report]

    return {**_guarded("catalog", build), "current_node": "tl_local"}


def _tl_local_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        reports = [check_dTL(graph_family(family, L)) for family, L in CLASSICAL_LISTING + AFFINE_LISTING]
        reports.append(check_dTL(build_TL_line("tri", LINE_L)))
        reports.append(check_dTL(build_TL_line("hyp", LINE_L)))
        reports.append(check_dTL(build_TL_line("ell", ELLIPTIC.L, params=ELLIPTIC),
                                 tol=get_tolerances()["tl_elliptic"]))
        return reports

    return {**_guarded("tl_local", build), "current_node": "functional"}


def _functional_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        tri = graph_family("A", 5)
        hyp = build_TL_line("hyp", LINE_L)
        rational = graph_family("D_aff", 5)
        return [
            check_functional_relation(tri_param("A", 5), tri.kappa, graph=tri.graph),
            check_functional_relation(SpectralParam.hyp(np.pi / (LINE_L + 1)), hyp.kappa, graph=hyp.graph),
            check_functional_relation(SpectralParam.rational(), rational.kappa, graph=rational.graph),
            check_obstruction(ELLIPTIC),
        ]

    return {**_guarded("functional", build), "current_node": "ybe"}


def _ybe_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        reports = [
            check_dYBE(baxterize_TL(graph_family("A", 5), tri_param("A", 5))),
            check_dYBE(baxterize_TL(graph_family("E6", None), tri_param("E6", None))),
            check_dYBE(baxterize_TL(graph_family("D_aff", 5), SpectralParam.rational())),
            check_dYBE(baxterize_TL(graph_family("A_aff", 3), SpectralParam.rational())),
        ]
        lam = np.pi / (LINE_L + 1)
        reports.append(check_dYBE(baxterize_TL(build_TL_line("tri", LINE_L), SpectralParam.tri(lam))))
        reports.append(check_dYBE(baxterize_TL(build_TL_line("hyp", LINE_L), SpectralParam.hyp(lam))))
        reports.append(check_dYBE(abf_family(ELLIPTIC), samples=sample_pairs(ABF_SAMPLES)))
        return reports

    return {**_guarded("ybe", build), "current_node": "hecke"}


def _hecke_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        hecke = hecke_from_TL(graph_family("A", 5))
        sigma, f = sigma_from_hecke(hecke)
        return [
            check_dHecke(hecke),
            check_dYBE(baxterize_Hecke(hecke.graph, sigma, f)),
            murphy_check(hecke, 3),
            murphy_check(hecke, 4),
        ]

    return {**_guarded("hecke", build), "current_node": "bmw"}


def _bmw_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        bmw = bmw_from_hecke(hecke_from_TL(graph_family("A", 5)))
        return [check_dBMW(bmw), check_dYBE_2param(bmw)]

    return {**_guarded("bmw", build), "current_node": "lattice"}


def _lattice_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        family = graph_family("A", 4)
        R = baxterize_TL(family, tri_param("A", 4))
        basis = ClosedPathBasis.build(family.graph, 6)
        jacobi, _ = check_spectrum(hamiltonian(family, basis))
        small = graph_family("A", 2)
        spectrum, _ = check_spectrum(hamiltonian(small, ClosedPathBasis.build(small.graph, 2)), expected=[2.0, 2.0])
        return [check_commuting(R, basis), check_hamiltonian(family, R, basis), jacobi, spectrum]

    return {**_guarded("lattice", build), "current_node": "degeneration"}


def _degeneration_node(state: SuiteState) -> Dict[str, Any]:
    def build() -> List[Report]:
        return [check_degeneration(ELLIPTIC.L)]

    return {**_guarded("degeneration", build), "current_node": "done"}


# ============================================================================
# GRAPH
# ============================================================================

NODES = [
    ("prepare", _prepare_node),
    ("catalog", _catalog_node),
    ("tl_local", _tl_local_node),
    ("functional", _functional_node),
    ("ybe", _ybe_node),
    ("hecke", _hecke_node),
    ("bmw", _bmw_node),
    ("lattice", _lattice_node),
    ("degeneration", _degeneration_node),
]


def create_suite_workflow():
    """Create the LangGraph workflow for the battery."""
    workflow = StateGraph(SuiteState)
    for name, node in NODES:
        workflow.add_node(name, node)
    workflow.set_entry_point(NODES[0][0])
    for (name, _), (following, _) in zip(NODES, NODES[1:]):
        workflow.add_edge(name, following)
    workflow.add_edge(NODES[-1][0], END)
    return workflow.compile()


_COMPILED_WORKFLOW = None


def get_compiled_workflow():
    """Compiled battery, cached at module level."""
    global _COMPILED_WORKFLOW
    if _COMPILED_WORKFLOW is None:
        _COMPILED_WORKFLOW = create_suite_workflow()
    return _COMPILED_WORKFLOW


def run_suite(profile: Optional[str] = None) -> SuiteSummary:
    """Run every node and aggregate. Passes iff no errors, at least 12 checks, all passing."""
    state = create_initial_state(profile)
    final = get_compiled_workflow().invoke(state)
    reports: List[Report] = final["reports"]
    errors: List[str] = final["errors"]
    passed_count = sum(1 for r in reports if r.passed)
    passed = not errors and len(reports) >= MIN_CHECKS and passed_count == len(reports)
    VerifyLogger.suite_summary(passed_count, len(reports))
    elapsed = time.perf_counter() - final["started"]
    logger.info(f"Battery finished in {elapsed:.1f}s")
    return SuiteSummary(profile=final["profile"], total=len(reports), passed_count=passed_count,
                        passed=passed, reports=reports, errors=errors)
