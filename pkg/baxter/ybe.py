"""
Dynamical Yang-Baxter checkers, the functional relation behind the
Temperley-Lieb ansatz, the trigonometric degeneration of the elliptic
weights and the elliptic kappa obstruction.
"""

import logging
import time
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from baxter.rmatrix import RFamily, abf_family, baxterize_BMW, baxterize_TL
from baxter.spectral import SpectralParam, ratio_triples, sample_pairs
from config import get_settings, get_tolerances
from groupoid.fiber import FiberOperator, chain, embed_at, identity, add, residual, scale
from groupoid.graph import Graph, Vertex
from models.schemas import Report, ResidualItem
from operators.families import BMWFamily, TLFamily, build_TL_line
from special.theta import EllipticParams
from utils.errors import DomainError, MissingVertexError, SingularityError
from utils.logger import VerifyLogger

logger = logging.getLogger(__name__)

VertexMap = Mapping[Vertex, FiberOperator]


def dybe_residual_ops(graph: Graph, a: Vertex, ops: Tuple[VertexMap, VertexMap, VertexMap]) -> float:
    """
    Residual of A23 B12 C23 = C12 B23 A12 on the order-3 fiber at a, the
    common shape of every Yang-Baxter form checked here.
    """
    A, B, C = ops
    lhs = chain(embed_at(graph, A, 2, 3, a), embed_at(graph, B, 1, 3, a), embed_at(graph, C, 2, 3, a))
    rhs = chain(embed_at(graph, C, 1, 3, a), embed_at(graph, B, 2, 3, a), embed_at(graph, A, 1, 3, a))
    return residual(lhs, rhs)


def _skip(check: str, item: str, reason: str) -> ResidualItem:
    VerifyLogger.skipped(check, item, reason)
    return ResidualItem(item=item, skipped=True, reason=reason)


def _report(check: str, items: List[ResidualItem], tol: float, started: float, graph: Graph,
            family: str, **inputs) -> Report:
    report = Report.from_items(check, items, tol, started=started, graph=graph.name, family=family, **inputs)
    VerifyLogger.check_result(check, report.max_residual, tol, report.passed)
    return report


# =============================================================================
# FUNCTIONAL RELATION
# =============================================================================

def functional_residual(f: SpectralParam, kappa: complex, z: complex, zp: complex) -> float:
    """|f(z'-z)(1 + kappa f(z) + f(z) f(z')) - (f(z') - f(z))|."""
    x, xp, xpp = f(z), f(zp), f(zp - z)
    return float(abs(xpp * (1 + kappa * x + x * xp) - (xp - x)))


def check_functional_relation(f: SpectralParam, kappa: Mapping[Vertex, complex],
                              samples: Optional[Sequence[Tuple[float, float]]] = None,
                              tol: Optional[float] = None, graph: Optional[Graph] = None) -> Report:
    """
    The relation must hold for kappa(a) and kappa(a h^1); with a graph it is
    checked on both ends of every edge, otherwise per vertex. Non-constant
    kappa additionally reports max |kappa(a) - kappa(b)| over edges.
    """
    tol = tol if tol is not None else get_tolerances()["functional"]
    samples = samples if samples is not None else sample_pairs(get_settings().ybe_samples, f.scale)
    started = time.perf_counter()

    if graph is not None:
        pairs = sorted(tuple(sorted(e)) for e in graph.edges if all(v in kappa for v in e))
    else:
        pairs = [(a, a) for a in sorted(kappa)]
    obstruction = max((abs(kappa[a] - kappa[b]) for a, b in pairs), default=0.0)

    items: List[ResidualItem] = []
    for k, (z, zp) in enumerate(samples):
        label = f"sample={k} z={z:.6g} z'={zp:.6g}"
        if f.near_pole(z, zp, zp - z):
            items.append(_skip("functional", label, "too close to a pole"))
            continue
        cache: Dict[complex, float] = {}
        for a, b in pairs:
            values = []
            for v in (a, b):
                if kappa[v] not in cache:
                    cache[kappa[v]] = functional_residual(f, kappa[v], z, zp)
                values.append(cache[kappa[v]])
            items.append(ResidualItem(item=f"a={a} b={b} {label}", residual=max(values)))

    name = graph.name if graph is not None else "kappa-map"
    report = Report.from_items("functional", items, tol, started=started, graph=name, family=f.name,
                               param=f.name, lam=f.lam, samples=[list(s) for s in samples],
                               kappa_obstruction=float(obstruction))
    VerifyLogger.check_result("functional", report.max_residual, tol, report.passed)
    return report


# =============================================================================
# DYNAMICAL YANG-BAXTER
# =============================================================================

def check_dYBE(R: RFamily, samples: Optional[Sequence[Tuple[float, float]]] = None,
               bases: Optional[Sequence[Vertex]] = None, tol: Optional[float] = None) -> Report:
    """
    R23(z-w, ah) R12(z, a) R23(w, ah) = R12(w, a) R23(z, ah) R12(z-w, a)
    on the order-3 fiber of every base, for every (z, w) sample.
    """
    default_tol = get_tolerances()["ybe_abf" if R.kind == "abf" else "hecke_ybe" if R.kind == "hecke" else "ybe"]
    tol = tol if tol is not None else default_tol
    samples = samples if samples is not None else sample_pairs(get_settings().ybe_samples, R.z_scale)
    bases = bases if bases is not None else R.graph.vertices
    started = time.perf_counter()

    items: List[ResidualItem] = []
    for k, (z, w) in enumerate(samples):
        label = f"sample={k} z={z:.6g} w={w:.6g}"
        try:
            ops = (R.at(z - w), R.at(z), R.at(w))
        except (SingularityError, DomainError) as e:
            items.append(_skip("dYBE", label, str(e)))
            continue
        for a in bases:
            try:
                items.append(ResidualItem(item=f"base={a} {label}", residual=dybe_residual_ops(R.graph, a, ops)))
            except MissingVertexError as e:
                items.append(ResidualItem(item=f"base={a} {label}", skipped=True,
                                          reason=f"no operator at shifted vertex {e.vertex}"))
    skipped = sum(1 for i in items if i.skipped)
    if skipped:
        logger.info(f"dYBE on {R.graph.name}: {skipped} (base, sample) items skipped at the boundary")
    return _report("dYBE", items, tol, started, R.graph, R.label,
                   samples=[list(s) for s in samples])


def check_dYBE_2param(family: BMWFamily, triples: Optional[Sequence[Tuple[float, float, float]]] = None,
                      bases: Optional[Sequence[Vertex]] = None, tol: Optional[float] = None) -> Report:
    """
    R12(u2,u3)[a] R23(u1,u3)[ah] R12(u1,u2)[a]
      = R23(u1,u2)[ah] R12(u1,u3)[a] R23(u2,u3)[ah]
    """
    tol = tol if tol is not None else get_tolerances()["bmw"]
    triples = triples if triples is not None else ratio_triples(5)
    bases = bases if bases is not None else family.graph.vertices
    graph = family.graph
    started = time.perf_counter()

    items: List[ResidualItem] = []
    for k, (u1, u2, u3) in enumerate(triples):
        label = f"sample={k} u=({u1:.6g},{u2:.6g},{u3:.6g})"
        try:
            r12, r13, r23 = (baxterize_BMW(family, u1, u2), baxterize_BMW(family, u1, u3),
                             baxterize_BMW(family, u2, u3))
        except DomainError as e:
            items.append(_skip("dYBE-2param", label, str(e)))
            continue
        for a in bases:
            try:
                # A23 B12 C23 = C12 B23 A12 with A = R(u1,u2), B = R(u1,u3), C = R(u2,u3)
                value = dybe_residual_ops(graph, a, (r12, r13, r23))
            except MissingVertexError as e:
                items.append(ResidualItem(item=f"base={a} {label}", skipped=True,
                                          reason=f"no operator at shifted vertex {e.vertex}"))
                continue
            items.append(ResidualItem(item=f"base={a} {label}", residual=value))
    return _report("dYBE-2param", items, tol, started, graph, family.kind,
                   triples=[list(t) for t in triples])


def check_gdYBE(family: TLFamily, a: Vertex, x: complex, xp: complex, xpp: complex,
                tol: Optional[float] = None) -> Report:
    """
    Generalized form with R(x) = id + x T taking (x, x', x'') directly:
    R23(x) R12(x') R23(x'') = R12(x'') R23(x') R12(x).
    """
    tol = tol if tol is not None else get_tolerances()["ybe"]
    graph, T = family.graph, family.T
    started = time.perf_counter()

    def at(value: complex) -> Dict[Vertex, FiberOperator]:
        return {v: add(identity(graph, v, 2), scale(value, T[v])) for v in T}

    item = f"base={a} x={complex(x)} x'={complex(xp)} x''={complex(xpp)}"
    try:
        items = [ResidualItem(item=item, residual=dybe_residual_ops(graph, a, (at(x), at(xp), at(xpp))))]
    except MissingVertexError as e:
        items = [_skip("gdYBE", item, f"no operator at shifted vertex {e.vertex}")]
    return _report("gdYBE", items, tol, started, graph, family.kind)


# =============================================================================
# ELLIPTIC WEIGHTS: DEGENERATION AND OBSTRUCTION
# =============================================================================

def check_degeneration(L: int, shift_b: Optional[float] = None, window: Optional[Tuple[int, int]] = None,
                       samples: int = 5, tol: Optional[float] = None, tau: complex = 10j) -> Report:
    """
    Entrywise distance between the elliptic R at large Im(tau) and the
    trigonometric TL ansatz with x = <z>/<1-z>.
    """
    tol = tol if tol is not None else get_tolerances()["degeneration"]
    b = shift_b if shift_b is not None else get_settings().shift_b
    started = time.perf_counter()
    params = EllipticParams(tau=tau, L=L, shift_b=b)
    abf = abf_family(params, window)
    tri = build_TL_line("tri", L, window=window, shift_b=b)
    trig = baxterize_TL(tri, SpectralParam.bracket_ratio(L))

    interior = abf.vertices
    items = []
    for k, (z, _) in enumerate(sample_pairs(samples)):
        n = interior[(3 * k + 1) % len(interior)]
        items.append(ResidualItem(item=f"vertex={n} z={z:.6g}", residual=residual(abf.R(z, n), trig.R(z, n))))
    return _report("degeneration", items, tol, started, abf.graph, "abf-vs-tri", tau=str(complex(tau)), L=L,
                   shift_b=b)


def elliptic_obstruction(params: EllipticParams, window: Optional[Tuple[int, int]] = None) -> float:
    """max over consecutive interior vertices of |kappa_ell(a) - kappa_ell(a+1)|."""
    family = build_TL_line("ell", params.L, params=params, window=window)
    vs = family.vertices
    return float(max(abs(family.kappa[u] - family.kappa[v]) for u, v in zip(vs, vs[1:])))


def check_obstruction(params: EllipticParams, window: Optional[Tuple[int, int]] = None,
                      threshold: Optional[float] = None) -> Report:
    """
    Demonstrates that kappa_ell is not constant. The residual is
    threshold / obstruction, so the report passes iff obstruction > threshold.
    """
    threshold = threshold if threshold is not None else get_tolerances()["obstruction"]
    started = time.perf_counter()
    value = elliptic_obstruction(params, window)
    ratio = threshold / value if value > 0 else float(np.inf)
    item = ResidualItem(item=f"tau={params.tau} L={params.L}", residual=ratio)
    report = Report.from_items("obstruction", [item], 1.0, started=started, family="ell",
                               threshold=threshold, obstruction=value, tau=str(params.tau), L=params.L)
    VerifyLogger.check_result("obstruction", report.max_residual, 1.0, report.passed)
    return report
