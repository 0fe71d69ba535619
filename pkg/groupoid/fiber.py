"""
Block operators on source fibers.

A FiberOperator of order k at base a acts on the span of the length-k paths
starting at a. Every edge carries a one-dimensional space, so each block
(in-path -> out-path) is a single complex scalar. Blocks are sparse: a missing
key is a structural zero.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, InitVar
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from config import get_settings
from groupoid.graph import Graph, Path, Vertex, paths_from, reduce
from utils.errors import InputError, InversionError, MissingVertexError, ShapeError

logger = logging.getLogger(__name__)

BlockKey = Tuple[Path, Path]


@dataclass(frozen=True, eq=False)
class FiberOperator:
    """Sparse scalar blocks keyed by (in-path, out-path)."""
    base: Vertex
    order: int
    blocks: Mapping[BlockKey, complex]
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        if self.order < 1:
            raise ShapeError(f"operator order must be >= 1, got {self.order}")
        if not check:
            return
        for (p_in, p_out), value in self.blocks.items():
            for p in (p_in, p_out):
                if p.base != self.base or p.length != self.order:
                    raise ShapeError(f"path {p} does not belong to the order-{self.order} fiber at {self.base}")
            if value != 0 and reduce(p_in) != reduce(p_out):
                raise ShapeError(f"block {p_in} -> {p_out} does not preserve the groupoid degree")

    @cached_property
    def by_in(self) -> Dict[Path, List[Tuple[Path, complex]]]:
        rows: Dict[Path, List[Tuple[Path, complex]]] = defaultdict(list)
        for (p_in, p_out), value in self.blocks.items():
            rows[p_in].append((p_out, value))
        return dict(rows)

    def get(self, p_in: Path, p_out: Path) -> complex:
        return self.blocks.get((p_in, p_out), 0j)

    def support(self) -> List[BlockKey]:
        return [key for key, value in self.blocks.items() if value != 0]

    def __repr__(self) -> str:
        return f"FiberOperator(base={self.base}, order={self.order}, blocks={len(self.blocks)})"


def _same_fiber(f: FiberOperator, g: FiberOperator):
    if f.base != g.base or f.order != g.order:
        raise ShapeError(
            f"fiber mismatch: (base {f.base}, order {f.order}) vs (base {g.base}, order {g.order})"
        )


def zero(base: Vertex, order: int) -> FiberOperator:
    return FiberOperator(base, order, {}, check=False)


def identity(graph: Graph, base: Vertex, order: int) -> FiberOperator:
    """Identity on the order-k fiber at base."""
    return FiberOperator(base, order, {(p, p): 1 + 0j for p in fiber_paths(graph, base, order)}, check=False)


def compose(f: FiberOperator, g: FiberOperator) -> FiberOperator:
    """f∘g: apply g first. (f∘g)[p→r] = Σ_q f[q→r]·g[p→q]."""
    _same_fiber(f, g)
    rows = f.by_in
    acc: Dict[BlockKey, complex] = defaultdict(complex)
    for (p, q), gv in g.blocks.items():
        for r, fv in rows.get(q, ()):
            acc[(p, r)] += fv * gv
    return FiberOperator(f.base, f.order, dict(acc), check=False)


def chain(*ops: FiberOperator) -> FiberOperator:
    """Product written left to right as matrices: chain(A, B, C) = A∘B∘C."""
    result = ops[-1]
    for op in reversed(ops[:-1]):
        result = compose(op, result)
    return result


def add(f: FiberOperator, g: FiberOperator) -> FiberOperator:
    _same_fiber(f, g)
    acc: Dict[BlockKey, complex] = defaultdict(complex)
    for key, value in f.blocks.items():
        acc[key] += value
    for key, value in g.blocks.items():
        acc[key] += value
    return FiberOperator(f.base, f.order, dict(acc), check=False)


def scale(c: complex, f: FiberOperator) -> FiberOperator:
    return FiberOperator(f.base, f.order, {key: c * value for key, value in f.blocks.items()}, check=False)


def sub(f: FiberOperator, g: FiberOperator) -> FiberOperator:
    return add(f, scale(-1.0, g))


def commutator(f: FiberOperator, g: FiberOperator) -> FiberOperator:
    return sub(compose(f, g), compose(g, f))


def residual(f: FiberOperator, g: FiberOperator) -> float:
    """Max absolute block difference over the union of supports; 0 iff equal."""
    _same_fiber(f, g)
    keys = set(f.blocks) | set(g.blocks)
    if not keys:
        return 0.0
    return float(max(abs(f.blocks.get(k, 0j) - g.blocks.get(k, 0j)) for k in keys))


def norm_max(f: FiberOperator) -> float:
    return float(max((abs(v) for v in f.blocks.values()), default=0.0))


# =============================================================================
# FIBER BASES AND DENSE VIEWS
# =============================================================================

def fiber_paths(graph: Graph, base: Vertex, order: int) -> List[Path]:
    """Order-k source fiber at base, refusing fibers above the configured cap."""
    cap = get_settings().max_paths_per_base
    if order > 1:
        Y = graph.adjacency_matrix()
        count = np.linalg.matrix_power(Y, order)[graph.index[base]].sum() if graph.has_vertex(base) else 0
        if count > cap:
            raise InputError(
                f"fiber at {base} of order {order} has {int(count)} paths (cap {cap}); lower N"
            )
    return paths_from(graph, base, order)


def to_dense(op: FiberOperator, basis: List[Path]) -> np.ndarray:
    """Matrix M with M[out, in] = block, rows/columns in basis order."""
    pos = {p: i for i, p in enumerate(basis)}
    M = np.zeros((len(basis), len(basis)), dtype=complex)
    for (p_in, p_out), value in op.blocks.items():
        M[pos[p_out], pos[p_in]] = value
    return M


def from_dense(base: Vertex, order: int, basis: List[Path], M: np.ndarray) -> FiberOperator:
    blocks = {}
    rows, cols = np.nonzero(M)
    for r, c in zip(rows, cols):
        blocks[(basis[c], basis[r])] = complex(M[r, c])
    return FiberOperator(base, order, blocks, check=False)


def invert(op: FiberOperator, graph: Graph, cond_limit: float = 1e12) -> FiberOperator:
    """
    Inverse computed sector by sector (paths grouped by reduced word), so
    degree preservation holds exactly in the result.
    """
    sectors: Dict[object, List[Path]] = defaultdict(list)
    for p in fiber_paths(graph, op.base, op.order):
        sectors[reduce(p)].append(p)

    blocks: Dict[BlockKey, complex] = {}
    for paths in sectors.values():
        M = to_dense_restricted(op, paths)
        if np.linalg.cond(M) > cond_limit:
            raise InversionError(op.base)
        try:
            Minv = np.linalg.inv(M)
        except np.linalg.LinAlgError as e:
            raise InversionError(op.base, f"operator at vertex {op.base} is not invertible: {e}") from e
        for r, p_out in enumerate(paths):
            for c, p_in in enumerate(paths):
                if Minv[r, c] != 0:
                    blocks[(p_in, p_out)] = complex(Minv[r, c])
    return FiberOperator(op.base, op.order, blocks, check=False)


def to_dense_restricted(op: FiberOperator, paths: List[Path]) -> np.ndarray:
    pos = {p: i for i, p in enumerate(paths)}
    M = np.zeros((len(paths), len(paths)), dtype=complex)
    for p_in in paths:
        for p_out, value in op.by_in.get(p_in, ()):
            if p_out in pos:
                M[pos[p_out], pos[p_in]] = value
    return M


# =============================================================================
# DYNAMICAL SHIFT EMBEDDING
# =============================================================================

def embed_at(graph: Graph, family: Mapping[Vertex, FiberOperator], position: int, total: int,
             base: Vertex, paths: Optional[List[Path]] = None) -> FiberOperator:
    """
    Order-`total` operator at `base` acting on legs position, position+1.

    For each in-path p the order-2 operator is taken at the vertex reached
    after position-1 legs (the shift h^(position-1)); all other legs pass
    through unchanged.
    """
    if not 1 <= position <= total - 1:
        raise InputError(f"position must satisfy 1 <= i <= N-1, got i={position}, N={total}")
    fiber = paths if paths is not None else fiber_paths(graph, base, total)
    i = position
    blocks: Dict[BlockKey, complex] = {}
    for p in fiber:
        v = p.vertices
        anchor = v[i - 1]
        op = family.get(anchor)
        if op is None:
            raise MissingVertexError(anchor)
        if op.order != 2:
            raise ShapeError(f"embedding needs order-2 operators, vertex {anchor} has order {op.order}")
        for sub_out, value in op.by_in.get(Path(v[i - 1:i + 2]), ()):
            if sub_out.target != v[i + 1]:
                raise ShapeError(f"block at {anchor} moves the endpoint of {Path(v[i - 1:i + 2])}")
            blocks[(p, Path(v[:i - 1] + sub_out.vertices + v[i + 2:]))] = value
    return FiberOperator(base, total, blocks, check=False)


def embed_with_shift(graph: Graph, family: Mapping[Vertex, FiberOperator], position: int, total: int,
                     bases=None) -> Dict[Vertex, FiberOperator]:
    """Vertex -> order-N operator T^(i,i+1)(a h^(i-1)) for every requested base."""
    targets = graph.vertices if bases is None else bases
    return {a: embed_at(graph, family, position, total, a) for a in targets}
