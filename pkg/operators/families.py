"""
Local dynamical operator families: Temperley-Lieb, Hecke and BMW.

Every family maps a vertex a to an order-2 FiberOperator on the paths of
length 2 starting at a, plus the vertex scalars of its defining relations.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Tuple, Union

import numpy as np

from catalog.perron import PFData
from config import get_settings
from groupoid.fiber import FiberOperator, add, identity, invert, scale, sub
from groupoid.graph import Graph, Path, Vertex
from special.theta import EllipticParams, bracket_ell, bracket_hyp, bracket_tri, branch_sqrt, nonzero
from utils.errors import DomainError, InputError
from utils.logger import VerifyLogger

logger = logging.getLogger(__name__)

LINE_KINDS = ("tri", "hyp", "ell")
Scalar = Union[complex, float, Mapping[Vertex, complex]]


@dataclass(frozen=True, eq=False)
class TLFamily:
    """T(a) with T(a)^2 = kappa(a) T(a), supported on round trips a->x->a."""
    graph: Graph
    T: Dict[Vertex, FiberOperator]
    kappa: Dict[Vertex, complex]
    kind: str = "graph"
    shift_b: float = 0.0
    L: Optional[int] = None

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.T))

    def kappa_is_constant(self, tol: float = 1e-12) -> bool:
        values = list(self.kappa.values())
        return all(abs(k - values[0]) < tol for k in values)


@dataclass(frozen=True, eq=False)
class HeckeFamily:
    """S(a) with (S - q)(S + 1/q) = 0."""
    graph: Graph
    S: Dict[Vertex, FiberOperator]
    qbar: Dict[Vertex, complex]
    kind: str = "hecke"
    _inverse: Dict[Vertex, FiberOperator] = field(default_factory=dict, repr=False)

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.S))

    def S_inv(self, a: Vertex) -> FiberOperator:
        if a not in self._inverse:
            self._inverse[a] = invert(self.S[a], self.graph)
        return self._inverse[a]


@dataclass(frozen=True, eq=False)
class BMWFamily:
    """U(a) with K(a) = id - (U - U^-1)/(q - 1/q) and the tangle scalar nubar."""
    graph: Graph
    U: Dict[Vertex, FiberOperator]
    qbar: Dict[Vertex, complex]
    nubar: Dict[Vertex, complex]
    kind: str = "bmw"
    _inverse: Dict[Vertex, FiberOperator] = field(default_factory=dict, repr=False)
    _K: Dict[Vertex, FiberOperator] = field(default_factory=dict, repr=False)

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(sorted(self.U))

    def U_inv(self, a: Vertex) -> FiberOperator:
        if a not in self._inverse:
            self._inverse[a] = invert(self.U[a], self.graph)
        return self._inverse[a]

    def K(self, a: Vertex) -> FiberOperator:
        if a not in self._K:
            q = self.qbar[a]
            gap = q - 1 / q
            if abs(gap) < 1e-12:
                raise DomainError(f"BMW contraction needs q != 1/q, got q={q} at vertex {a}")
            diff = sub(self.U[a], self.U_inv(a))
            self._K[a] = sub(identity(self.graph, a, 2), scale(1 / gap, diff))
        return self._K[a]


def _vertex_map(value: Scalar, vertices) -> Dict[Vertex, complex]:
    if isinstance(value, Mapping):
        missing = [a for a in vertices if a not in value]
        if missing:
            raise InputError(f"scalar map is missing vertex {missing[0]}")
        return {a: complex(value[a]) for a in vertices}
    return {a: complex(value) for a in vertices}


def q_from_kappa(kappa: complex) -> complex:
    """Root of q + 1/q = kappa; exp(i pi/h) for kappa = 2cos(pi/h)."""
    kappa = complex(kappa)
    return (kappa + np.sqrt(kappa * kappa - 4)) / 2


# =============================================================================
# TEMPERLEY-LIEB CONSTRUCTIONS
# =============================================================================

def build_TL_graph(graph: Graph, pf: PFData) -> TLFamily:
    """Graph family T(d): (d->a->d) to (d->c->d) with weight sqrt(S_a S_c)/S_d."""
    if set(pf.eigenvector) != set(graph.vertices):
        raise InputError(f"PF data of {pf.graph_name} does not belong to graph {graph.name}")
    S = pf.eigenvector
    T: Dict[Vertex, FiberOperator] = {}
    for d in graph.vertices:
        blocks = {}
        for a in graph.neighbors[d]:
            for c in graph.neighbors[d]:
                blocks[(Path.of(d, a, d), Path.of(d, c, d))] = complex(np.sqrt(S[a] * S[c]) / S[d])
        T[d] = FiberOperator(d, 2, blocks)
    VerifyLogger.family_built("TL", graph.name, len(T))
    return TLFamily(graph=graph, T=T, kappa={d: complex(pf.eigenvalue) for d in graph.vertices})


def line_graph(lo: int, hi: int) -> Graph:
    """Integer path graph lo..hi carrying the objects n + b."""
    return Graph.from_edges([(n, n + 1) for n in range(lo, hi)], name=f"line[{lo},{hi}]")


def build_TL_line(kind: str, L: int, params: Optional[EllipticParams] = None,
                  window: Optional[Tuple[int, int]] = None, shift_b: Optional[float] = None) -> TLFamily:
    """
    Unrestricted type-A family on the window lo..hi.

    T(n) is materialized at the interior vertices lo+1..hi-1, where all of
    n-1, n, n+1 exist; the bracket of vertex n is evaluated at n + b.
    """
    if kind not in LINE_KINDS:
        raise InputError(f"unknown line family '{kind}' (expected tri, hyp or ell)")
    settings = get_settings()
    lo, hi = window if window is not None else (settings.window_lo, settings.window_hi)
    if hi - lo + 1 < 5:
        raise InputError(f"window [{lo}, {hi}] needs at least 5 vertices")
    if kind == "ell":
        if params is None:
            raise InputError("elliptic family needs EllipticParams (tau, L)")
        L = params.L
        b = params.shift_b if shift_b is None else shift_b
        br = lambda x: bracket_ell(x, params)
    else:
        if L < 2:
            raise DomainError(f"L must be >= 2, got {L}")
        b = settings.shift_b if shift_b is None else shift_b
        br = (lambda x: bracket_tri(x, L)) if kind == "tri" else (lambda x: bracket_hyp(x, L))

    graph = line_graph(lo, hi)
    T: Dict[Vertex, FiberOperator] = {}
    kappa: Dict[Vertex, complex] = {}
    for n in range(lo + 1, hi):
        a = n + b
        mid = nonzero(complex(br(a)), f"a={a}")
        up, down = complex(br(a + 1)), complex(br(a - 1))
        cross = branch_sqrt(up * down) / mid
        T[n] = FiberOperator(n, 2, {
            (Path.of(n, n + 1, n), Path.of(n, n + 1, n)): up / mid,
            (Path.of(n, n - 1, n), Path.of(n, n - 1, n)): down / mid,
            (Path.of(n, n + 1, n), Path.of(n, n - 1, n)): cross,
            (Path.of(n, n - 1, n), Path.of(n, n + 1, n)): cross,
        })
        if kind == "tri":
            kappa[n] = complex(2 * np.cos(np.pi / (L + 1)))
        elif kind == "hyp":
            kappa[n] = complex(2 * np.cosh(np.pi / (L + 1)))
        else:
            kappa[n] = (up + down) / mid
    VerifyLogger.family_built(f"TL[{kind}]", graph.name, len(T))
    return TLFamily(graph=graph, T=T, kappa=kappa, kind=kind, shift_b=b, L=L)


# =============================================================================
# HECKE <-> TL AND THE HECKE-DEGENERATE BMW INSTANCE
# =============================================================================

def hecke_from_TL(family: TLFamily, qbar: Optional[Scalar] = None) -> HeckeFamily:
    """S(a) := q(a) id - T(a); q defaults to the root of q + 1/q = kappa(a)."""
    if qbar is None:
        q = {a: q_from_kappa(k) for a, k in family.kappa.items()}
    else:
        q = _vertex_map(qbar, family.vertices)
    for a in family.vertices:
        if abs(q[a] + 1 / q[a] - family.kappa[a]) > 1e-10:
            raise InputError(
                f"q + 1/q = {q[a] + 1 / q[a]:.12g} does not match kappa = {family.kappa[a]:.12g} at vertex {a}"
            )
        if abs(q[a] + 1 / q[a]) < 1e-12:
            raise InputError(f"q + 1/q vanishes at vertex {a}")
    S = {a: sub(scale(q[a], identity(family.graph, a, 2)), family.T[a]) for a in family.vertices}
    VerifyLogger.family_built("Hecke", family.graph.name, len(S))
    return HeckeFamily(graph=family.graph, S=S, qbar=q, kind=f"hecke[{family.kind}]")


def tl_from_hecke(family: HeckeFamily) -> TLFamily:
    """T(a) := q(a) id - S(a) with kappa = q + 1/q."""
    T, kappa = {}, {}
    for a in family.vertices:
        q = family.qbar[a]
        if abs(q + 1 / q) < 1e-12:
            raise DomainError(f"q + 1/q vanishes at vertex {a}")
        T[a] = sub(scale(q, identity(family.graph, a, 2)), family.S[a])
        kappa[a] = q + 1 / q
    return TLFamily(graph=family.graph, T=T, kappa=kappa, kind="tl[hecke]")


def bmw_from_hecke(family: HeckeFamily, nubar: Scalar = 1.0) -> BMWFamily:
    """U := S. The quadratic relation makes U - U^-1 = (q - 1/q) id, so K = 0."""
    nu = _vertex_map(nubar, family.vertices)
    VerifyLogger.family_built("BMW", family.graph.name, len(family.S))
    return BMWFamily(graph=family.graph, U=dict(family.S), qbar=dict(family.qbar), nubar=nu,
                     kind=f"bmw[{family.kind}]")


def scaled(family: Mapping[Vertex, FiberOperator], factors: Mapping[Vertex, complex]) -> Dict[Vertex, FiberOperator]:
    """Vertex-wise c(a) * X(a); embedding it evaluates c at the shifted base."""
    return {a: scale(factors[a], op) for a, op in family.items()}


def plus_identity(graph: Graph, family: Mapping[Vertex, FiberOperator],
                  coefficient: Mapping[Vertex, complex]) -> Dict[Vertex, FiberOperator]:
    """Vertex-wise X(a) + c(a) id."""
    return {a: add(op, scale(coefficient[a], identity(graph, a, 2))) for a, op in family.items()}
