"""
Relation checkers for the local and global dynamical operator families.

Each checker walks the bases of the family's graph, builds the order-3 (or
order-N) operators through the dynamical shift embedding and records one
ResidualItem per (base, relation). Bases whose shifted anchors fall outside
the family (window ends, restricted boundaries) are recorded as skips.
"""

import logging
import time
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from config import get_tolerances
from groupoid.fiber import (
    FiberOperator,
    add,
    chain,
    commutator,
    compose,
    embed_at,
    fiber_paths,
    identity,
    residual,
    scale,
    zero,
)
from groupoid.graph import Graph, Path, Vertex
from models.schemas import Report, ResidualItem
from operators.families import BMWFamily, HeckeFamily, TLFamily, plus_identity, scaled
from utils.errors import InputError, MissingVertexError, PreconditionError
from utils.logger import VerifyLogger

logger = logging.getLogger(__name__)

Relation = Tuple[str, float]


def _sweep(check: str, bases: Sequence[Vertex], per_base: Callable[[Vertex], List[Relation]]) -> List[ResidualItem]:
    items: List[ResidualItem] = []
    for a in bases:
        try:
            relations = per_base(a)
        except MissingVertexError as e:
            reason = f"no operator at shifted vertex {e.vertex}"
            items.append(ResidualItem(item=f"base={a}", skipped=True, reason=reason))
            VerifyLogger.skipped(check, f"base={a}", reason)
            continue
        items.extend(ResidualItem(item=f"base={a} {name}", residual=value) for name, value in relations)
    return items


def _finish(check: str, items: List[ResidualItem], tol: float, started: float, graph: Graph,
            family: str, **inputs) -> Report:
    report = Report.from_items(check, items, tol, started=started, graph=graph.name, family=family, **inputs)
    if not report.checked:
        logger.warning(f"⚠️ {check}: every base was skipped; nothing verified")
    VerifyLogger.check_result(check, report.max_residual, tol, report.passed)
    return report


def _zero_residual(op: FiberOperator) -> float:
    return residual(op, zero(op.base, op.order))


# =============================================================================
# LOCAL RELATIONS
# =============================================================================

def check_dTL(family: TLFamily, tol: Optional[float] = None) -> Report:
    """T(a)^2 = kappa(a) T(a), T12 T23 T12 = T12 and T23 T12 T23 = T23 on order-3 fibers."""
    tol = tol if tol is not None else get_tolerances()["tl"]
    started = time.perf_counter()
    graph, T = family.graph, family.T

    def per_base(a: Vertex) -> List[Relation]:
        out = []
        if a in T:
            out.append(("TLa", residual(compose(T[a], T[a]), scale(family.kappa[a], T[a]))))
        T12 = embed_at(graph, T, 1, 3, a)
        T23 = embed_at(graph, T, 2, 3, a)
        out.append(("TLb", residual(chain(T12, T23, T12), T12)))
        out.append(("TLc", residual(chain(T23, T12, T23), T23)))
        return out

    items = _sweep("dTL", graph.vertices, per_base)
    return _finish("dTL", items, tol, started, graph, family.kind)


def check_dHecke(family: HeckeFamily, tol: Optional[float] = None) -> Report:
    """Quadratic relation, closed-form inverse and braid relation of a local Hecke family."""
    tol = tol if tol is not None else get_tolerances()["hecke"]
    started = time.perf_counter()
    graph, S = family.graph, family.S

    def per_base(a: Vertex) -> List[Relation]:
        out = []
        if a in S:
            q = family.qbar[a]
            I = identity(graph, a, 2)
            quad = compose(add(S[a], scale(-q, I)), add(S[a], scale(1 / q, I)))
            out.append(("quadratic", _zero_residual(quad)))
            out.append(("inverse", residual(family.S_inv(a), add(S[a], scale(-(q - 1 / q), I)))))
        S12 = embed_at(graph, S, 1, 3, a)
        S23 = embed_at(graph, S, 2, 3, a)
        out.append(("braid", residual(chain(S12, S23, S12), chain(S23, S12, S23))))
        return out

    items = _sweep("dHecke", graph.vertices, per_base)
    return _finish("dHecke", items, tol, started, graph, family.kind)


def check_dBMW(family: BMWFamily, tol: Optional[float] = None) -> Report:
    """
    Braid relation, K U = U K = nu K and the two tangle relations for both
    signs of the exponent, on order-3 fibers.
    """
    tol = tol if tol is not None else get_tolerances()["bmw"]
    started = time.perf_counter()
    graph, U = family.graph, family.U
    K = {a: family.K(a) for a in family.vertices}
    U_pow = {1: U, -1: {a: family.U_inv(a) for a in family.vertices}}

    def per_base(a: Vertex) -> List[Relation]:
        out = []
        if a in U:
            nu = family.nubar[a]
            out.append(("KU", residual(compose(K[a], U[a]), scale(nu, K[a]))))
            out.append(("UK", residual(compose(U[a], K[a]), scale(nu, K[a]))))
        U12 = embed_at(graph, U, 1, 3, a)
        U23 = embed_at(graph, U, 2, 3, a)
        out.append(("braid", residual(chain(U12, U23, U12), chain(U23, U12, U23))))
        K12 = embed_at(graph, K, 1, 3, a)
        K23 = embed_at(graph, K, 2, 3, a)
        for eps in (1, -1):
            factors = {v: family.nubar[v] ** (-eps) for v in family.vertices}
            rhs23 = embed_at(graph, scaled(K, factors), 2, 3, a)
            out.append((f"K23U12K23 eps={eps:+d}",
                        residual(chain(K23, embed_at(graph, U_pow[eps], 1, 3, a), K23), rhs23)))
            rhs12 = scale(family.nubar[a] ** (-eps), K12) if a in K else zero(a, 3)
            out.append((f"K12U23K12 eps={eps:+d}",
                        residual(chain(K12, embed_at(graph, U_pow[eps], 2, 3, a), K12), rhs12)))
        return out

    items = _sweep("dBMW", graph.vertices, per_base)
    return _finish("dBMW", items, tol, started, graph, family.kind)


# =============================================================================
# GLOBAL RELATIONS ON ORDER-N FIBERS
# =============================================================================

def _generators(graph: Graph, family: Mapping[Vertex, FiberOperator], N: int, a: Vertex,
                paths: List[Path]) -> Dict[int, FiberOperator]:
    return {i: embed_at(graph, family, i, N, a, paths) for i in range(1, N)}


def check_global(family: TLFamily, N: int, tol: Optional[float] = None) -> Report:
    """T_i(a) := T^(i,i+1)(a h^(i-1)) on order-N fibers: quadratic, sandwich and far commutation."""
    if N < 3:
        raise InputError(f"global relations need N >= 3, got N={N}")
    tol = tol if tol is not None else get_tolerances()["tl"]
    started = time.perf_counter()
    graph = family.graph
    kT = scaled(family.T, family.kappa)

    def per_base(a: Vertex) -> List[Relation]:
        paths = fiber_paths(graph, a, N)
        T = _generators(graph, family.T, N, a, paths)
        out = []
        for i in range(1, N):
            out.append((f"square i={i}", residual(compose(T[i], T[i]), embed_at(graph, kT, i, N, a, paths))))
        for i in range(1, N - 1):
            out.append((f"sandwich i={i}", residual(chain(T[i], T[i + 1], T[i]), T[i])))
            out.append((f"sandwich' i={i}", residual(chain(T[i + 1], T[i], T[i + 1]), T[i + 1])))
        for i in range(1, N):
            for j in range(i + 2, N):
                out.append((f"far i={i} j={j}", _zero_residual(commutator(T[i], T[j]))))
        return out

    items = _sweep("global-TL", graph.vertices, per_base)
    return _finish("global-TL", items, tol, started, graph, family.kind, N=N)


def check_global_hecke(family: HeckeFamily, N: int, tol: Optional[float] = None) -> Report:
    """Global Hecke relations with q evaluated at the shifted base of each generator."""
    if N < 3:
        raise InputError(f"global relations need N >= 3, got N={N}")
    tol = tol if tol is not None else get_tolerances()["hecke"]
    started = time.perf_counter()
    graph = family.graph
    minus_q = plus_identity(graph, family.S, {a: -q for a, q in family.qbar.items()})
    plus_qinv = plus_identity(graph, family.S, {a: 1 / q for a, q in family.qbar.items()})

    def per_base(a: Vertex) -> List[Relation]:
        paths = fiber_paths(graph, a, N)
        S = _generators(graph, family.S, N, a, paths)
        out = []
        for i in range(1, N):
            quad = compose(embed_at(graph, minus_q, i, N, a, paths), embed_at(graph, plus_qinv, i, N, a, paths))
            out.append((f"quadratic i={i}", _zero_residual(quad)))
        for i in range(1, N - 1):
            out.append((f"braid i={i}", residual(chain(S[i], S[i + 1], S[i]), chain(S[i + 1], S[i], S[i + 1]))))
        for i in range(1, N):
            for j in range(i + 2, N):
                out.append((f"far i={i} j={j}", _zero_residual(commutator(S[i], S[j]))))
        return out

    items = _sweep("global-Hecke", graph.vertices, per_base)
    return _finish("global-Hecke", items, tol, started, graph, family.kind, N=N)


def murphy_check(family: HeckeFamily, N: int, tol: Optional[float] = None) -> Report:
    """
    Murphy elements J_1 = S_1^2, J_i = S_i J_(i-1) S_i and their commutation
    relations. Requires a constant q.
    """
    if N < 3:
        raise InputError(f"Murphy elements need N >= 3, got N={N}")
    qs = list(family.qbar.values())
    if any(abs(q - qs[0]) > 1e-12 for q in qs):
        raise PreconditionError("Murphy relations need a constant q on all vertices")
    tol = tol if tol is not None else get_tolerances()["murphy"]
    started = time.perf_counter()
    graph = family.graph

    def per_base(a: Vertex) -> List[Relation]:
        paths = fiber_paths(graph, a, N)
        S = _generators(graph, family.S, N, a, paths)
        J = {1: compose(S[1], S[1])}
        for i in range(2, N):
            J[i] = chain(S[i], J[i - 1], S[i])
        out = []
        for i in J:
            for j in J:
                if i < j:
                    out.append((f"[J{i},J{j}]", _zero_residual(commutator(J[i], J[j]))))
        for j in J:
            out.append((f"[S1,J{j}]", _zero_residual(commutator(S[1], J[j]))))
        for i in range(2, N):
            for j in J:
                if j not in (i - 1, i):
                    out.append((f"[S{i},J{j}]", _zero_residual(commutator(S[i], J[j]))))
            out.append((f"[S{i},J{i - 1}J{i}]", _zero_residual(commutator(S[i], compose(J[i - 1], J[i])))))
            out.append((f"[S{i},J{i}+J{i - 1}]", _zero_residual(commutator(S[i], add(J[i], J[i - 1])))))
        return out

    items = _sweep("murphy", graph.vertices, per_base)
    return _finish("murphy", items, tol, started, graph, family.kind, N=N)


# =============================================================================
# DIAGRAM ALGEBRA COMPONENTS
# =============================================================================

def _witness_path(graph: Graph, anchor: Vertex, position: int, total: int, middle: Vertex) -> Path:
    """
    An order-`total` path that sits at `anchor` after position-1 legs and
    then makes the round trip anchor -> middle -> anchor.
    """
    nb = graph.neighbors[anchor][0]
    k = position - 1
    prefix = [anchor if (k - t) % 2 == 0 else nb for t in range(k + 1)]
    rest = total - k - 2
    suffix = [nb if t % 2 == 0 else anchor for t in range(rest)]
    return Path(tuple(prefix) + (middle, anchor) + tuple(suffix))


def _component(graph: Graph, T: Mapping[Vertex, FiberOperator], position: int, total: int,
               anchor: Vertex, out_mid: Vertex, in_mid: Vertex) -> complex:
    """e_i(anchor)[out_mid, in_mid]: the T_i block taking the in_mid round trip to the out_mid one."""
    p = _witness_path(graph, anchor, position, total, in_mid)
    op = embed_at(graph, T, position, total, p.base, [p])
    k = position
    q = Path(p.vertices[:k] + (out_mid,) + p.vertices[k + 1:])
    return op.get(p, q)


def check_diagram_algebra(family: TLFamily, N: int, tol: Optional[float] = None) -> Report:
    """
    Component form of the diagram algebra relations with phi = kappa:

        sum_c e_i(a)[c,d] e_i(a)[b,c]          = phi e_i(a)[b,d]
        e_i(a)[c,d] e_(i+1)(c)[a,a] e_i(a)[b,c] = e_i(a)[b,d]
        e_(i+1)(b)[a,d] e_i(a)[b,b] e_(i+1)(b)[c,a] = e_(i+1)(b)[c,d]
    """
    if N < 3:
        raise InputError(f"diagram relations need N >= 3, got N={N}")
    if not family.kappa_is_constant():
        raise PreconditionError("diagram algebra needs a constant kappa")
    tol = tol if tol is not None else get_tolerances()["tl"]
    started = time.perf_counter()
    graph, T = family.graph, family.T
    phi = next(iter(family.kappa.values()))
    nbrs = graph.neighbors

    def e(i: int, a: Vertex, b: Vertex, c: Vertex) -> complex:
        return _component(graph, T, i, N, a, b, c)

    def per_base(a: Vertex) -> List[Relation]:
        if a not in T:
            raise MissingVertexError(a)
        out = []
        for i in range(1, N):
            worst = 0.0
            for b in nbrs[a]:
                for d in nbrs[a]:
                    lhs = sum(e(i, a, c, d) * e(i, a, b, c) for c in nbrs[a])
                    worst = max(worst, abs(lhs - phi * e(i, a, b, d)))
            out.append((f"TLa i={i}", worst))
        for i in range(1, N - 1):
            worst_b = worst_c = 0.0
            for b in nbrs[a]:
                for c in nbrs[a]:
                    for d in nbrs[a]:
                        lhs = e(i, a, c, d) * e(i + 1, c, a, a) * e(i, a, b, c)
                        worst_b = max(worst_b, abs(lhs - e(i, a, b, d)))
            # TLc is anchored at b, a neighbour of a, with c, d neighbours of b
            for b in nbrs[a]:
                for c in nbrs[b]:
                    for d in nbrs[b]:
                        lhs = e(i + 1, b, a, d) * e(i, a, b, b) * e(i + 1, b, c, a)
                        worst_c = max(worst_c, abs(lhs - e(i + 1, b, c, d)))
            out.append((f"TLb i={i}", worst_b))
            out.append((f"TLc i={i}", worst_c))
        return out

    items = _sweep("diagram", graph.vertices, per_base)
    return _finish("diagram", items, tol, started, graph, family.kind, N=N)
