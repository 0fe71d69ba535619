"""
Baxterized R-matrix families.

An RFamily turns a spectral value z into a vertex -> order-2 FiberOperator
map. Four constructions are provided: the Temperley-Lieb ansatz
R = id + f(z) T, the Hecke form e^z sigma + e^-z sigma^-1, the two-parameter
BMW form, and the elliptic face weights of the unrestricted line.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from baxter.spectral import SpectralParam
from config import get_settings, get_tolerances
from groupoid.fiber import FiberOperator, add, identity, invert, residual, scale
from groupoid.graph import Graph, Path, Vertex
from operators.families import BMWFamily, HeckeFamily, TLFamily, line_graph
from special.theta import EllipticParams, bracket_ell, branch_sqrt, nonzero
from utils.errors import DomainError, InputError, PreconditionError

logger = logging.getLogger(__name__)

Builder = Callable[[complex, Vertex], FiberOperator]


@dataclass(eq=False)
class RFamily:
    """R(z, a) on the vertices where the underlying family is defined."""
    graph: Graph
    kind: str
    vertices: Tuple[Vertex, ...]
    builder: Builder = field(repr=False)
    label: str = ""
    z_scale: float = 1.0
    _cache: Dict[complex, Dict[Vertex, FiberOperator]] = field(default_factory=dict, repr=False)

    def at(self, z: complex) -> Dict[Vertex, FiberOperator]:
        """Vertex -> R(z, a), memoized per z."""
        z = complex(z)
        if z not in self._cache:
            self._cache[z] = {a: self.builder(z, a) for a in self.vertices}
        return self._cache[z]

    def R(self, z: complex, a: Vertex) -> FiberOperator:
        return self.at(z)[a]


# =============================================================================
# TEMPERLEY-LIEB ANSATZ
# =============================================================================

def baxterize_TL(family: TLFamily, f: SpectralParam, samples: Optional[Sequence[Tuple[float, float]]] = None,
                 tol: Optional[float] = None) -> RFamily:
    """
    R(z, a) = id + f(z) T(a), refused unless f satisfies the functional
    relation for kappa on every edge of the family.
    """
    from baxter.ybe import check_functional_relation

    tol = tol if tol is not None else get_tolerances()["functional"]
    report = check_functional_relation(f, family.kappa, samples=samples, tol=tol, graph=family.graph)
    if not report.passed:
        raise PreconditionError(
            f"{f.name} parameterization does not Baxterize {family.kind} on {family.graph.name}: "
            f"functional relation residual {report.max_residual:.3e} (tol {tol:.1e}), "
            f"kappa obstruction {report.inputs.get('kappa_obstruction', 0.0):.3e}"
        )
    graph, T = family.graph, family.T

    def build(z: complex, a: Vertex) -> FiberOperator:
        return add(identity(graph, a, 2), scale(f(z), T[a]))

    return RFamily(graph, "tl", family.vertices, build, label=f"{family.kind}+{f.name}", z_scale=f.scale)


# =============================================================================
# HECKE
# =============================================================================

def sigma_from_hecke(family: HeckeFamily) -> Tuple[Dict[Vertex, FiberOperator], Dict[Vertex, complex]]:
    """sigma := i S, so sigma + sigma^-1 = i(q - 1/q) id."""
    sigma = {a: scale(1j, op) for a, op in family.S.items()}
    f = {a: 1j * (q - 1 / q) for a, q in family.qbar.items()}
    return sigma, f


def baxterize_Hecke(graph: Graph, sigma: Mapping[Vertex, FiberOperator], f: Mapping[Vertex, complex],
                    tol: float = 1e-10) -> RFamily:
    """R(z, a) = e^z sigma(a) + e^-z sigma(a)^-1 with f constant along every arrow."""
    for edge in graph.edges:
        u, v = tuple(edge)
        if u in f and v in f and abs(f[u] - f[v]) > tol:
            raise PreconditionError(f"f differs across the arrow {u}->{v}: {f[u]} vs {f[v]}")
    inverse = {}
    for a, op in sigma.items():
        inverse[a] = invert(op, graph)
        gap = residual(add(op, inverse[a]), scale(f[a], identity(graph, a, 2)))
        if gap > tol:
            raise PreconditionError(f"sigma + sigma^-1 != f id at vertex {a} (residual {gap:.3e})")

    def build(z: complex, a: Vertex) -> FiberOperator:
        return add(scale(np.exp(z), sigma[a]), scale(np.exp(-z), inverse[a]))

    return RFamily(graph, "hecke", tuple(sorted(sigma)), build, label="hecke")


# =============================================================================
# BMW (two multiplicative parameters)
# =============================================================================

def _constant_along_arrows(graph: Graph, values: Mapping[Vertex, complex], label: str):
    for edge in graph.edges:
        u, v = tuple(edge)
        if u in values and v in values and abs(values[u] - values[v]) > 1e-12:
            raise PreconditionError(f"{label} differs across the arrow {u}->{v}")


def baxterize_BMW(family: BMWFamily, u: complex, v: complex) -> Dict[Vertex, FiberOperator]:
    """
    R(u, v)[a] = U(a) + (q - 1/q)/(v/u - 1) id + (q - 1/q)/(1 + q v/(nu u)) K(a).
    """
    _constant_along_arrows(family.graph, family.qbar, "q")
    _constant_along_arrows(family.graph, family.nubar, "nu")
    ratio = complex(v) / complex(u)
    if abs(ratio - 1) < 1e-12:
        raise DomainError("v/u = 1: the identity coefficient is singular")
    out = {}
    for a in family.vertices:
        q, nu = family.qbar[a], family.nubar[a]
        denom = 1 + q * ratio / nu
        if abs(denom) < 1e-12:
            raise DomainError(f"1 + q v/(nu u) vanishes at vertex {a}: the K coefficient is singular")
        gap = q - 1 / q
        term = add(family.U[a], scale(gap / (ratio - 1), identity(family.graph, a, 2)))
        out[a] = add(term, scale(gap / denom, family.K(a)))
    return out


# =============================================================================
# ELLIPTIC FACE WEIGHTS ON THE UNRESTRICTED LINE
# =============================================================================

def build_ABF_R(params: EllipticParams, z: complex, n: Vertex, graph: Optional[Graph] = None) -> FiberOperator:
    """
    Elliptic R at vertex n (object a = n + b) on the line fiber:
    straight paths weight 1, round trips [a +- z][1]/([a][1-z]), cross blocks
    sqrt([a-1][a+1])[z]/([a][1-z]).
    """
    if graph is None:
        settings = get_settings()
        graph = line_graph(settings.window_lo, settings.window_hi)
    br = lambda x: bracket_ell(x, params)
    a = n + params.shift_b
    den = nonzero(br(a), f"a={a}") * nonzero(br(1 - z), f"1-z={1 - z}")
    one = br(1)
    cross = branch_sqrt(br(a - 1) * br(a + 1)) * br(z) / den
    blocks = {}
    for step in (1, -1):
        straight = Path.of(n, n + step, n + 2 * step)
        if graph.is_path(straight):
            blocks[(straight, straight)] = 1 + 0j
    if graph.is_path(Path.of(n, n + 1, n)) and graph.is_path(Path.of(n, n - 1, n)):
        up, down = Path.of(n, n + 1, n), Path.of(n, n - 1, n)
        blocks[(up, up)] = br(a + z) * one / den
        blocks[(down, down)] = br(a - z) * one / den
        blocks[(up, down)] = cross
        blocks[(down, up)] = cross
    else:
        raise DomainError(f"vertex {n} is not interior to {graph.name}")
    return FiberOperator(n, 2, blocks)


def abf_family(params: EllipticParams, window: Optional[Tuple[int, int]] = None) -> RFamily:
    settings = get_settings()
    lo, hi = window if window is not None else (settings.window_lo, settings.window_hi)
    if hi - lo + 1 < 5:
        raise InputError(f"window [{lo}, {hi}] needs at least 5 vertices")
    graph = line_graph(lo, hi)

    def build(z: complex, n: Vertex) -> FiberOperator:
        return build_ABF_R(params, z, n, graph)

    return RFamily(graph, "abf", tuple(range(lo + 1, hi)), build, label=f"abf[tau={params.tau}]")


LINE_BASIS = ("++", "+-", "-+", "--")


def line_matrix(op: FiberOperator) -> np.ndarray:
    """
    4x4 matrix (rows out, columns in) in the basis ++, +-, -+, -- of the
    line fiber at n: n->n+1->n+2, n->n+1->n, n->n-1->n, n->n-1->n-2.
    Rows and columns of paths the fiber lacks are NaN.
    """
    n = op.base
    paths = [Path.of(n, n + 1, n + 2), Path.of(n, n + 1, n), Path.of(n, n - 1, n), Path.of(n, n - 1, n - 2)]
    present = {p for key in op.blocks for p in key}
    M = np.zeros((4, 4), dtype=complex)
    for r, p_out in enumerate(paths):
        for c, p_in in enumerate(paths):
            if p_out not in present or p_in not in present:
                M[r, c] = np.nan
            else:
                M[r, c] = op.get(p_in, p_out)
    return M
