"""
Graph groupoids: finite simple connected graphs, their arrows, paths and
freely reduced words.

Paths are stored as vertex sequences; a path of length k has k+1 vertices.
All enumerations are lexicographic in the vertex sequence so every basis built
from them is reproducible.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple

import numpy as np

from utils.errors import InputError

logger = logging.getLogger(__name__)

Vertex = int


@dataclass(frozen=True)
class Arrow:
    """Oriented edge source -> target."""
    source: Vertex
    target: Vertex

    def inverse(self) -> "Arrow":
        return Arrow(self.target, self.source)

    def __repr__(self) -> str:
        return f"{self.source}->{self.target}"


@dataclass(frozen=True)
class Path:
    """Composable sequence of arrows, stored as the visited vertices."""
    vertices: Tuple[Vertex, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InputError("a path needs at least its base vertex")

    @classmethod
    def of(cls, *vertices: Vertex) -> "Path":
        return cls(tuple(vertices))

    @property
    def base(self) -> Vertex:
        return self.vertices[0]

    @property
    def target(self) -> Vertex:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def arrows(self) -> Tuple[Arrow, ...]:
        return tuple(Arrow(u, v) for u, v in zip(self.vertices, self.vertices[1:]))

    def __repr__(self) -> str:
        return "→".join(str(v) for v in self.vertices)


@dataclass(frozen=True)
class ReducedWord:
    """Arrow sequence without adjacent inverse pairs; empty for an identity."""
    base: Vertex
    arrows: Tuple[Arrow, ...] = ()

    @property
    def is_identity(self) -> bool:
        return not self.arrows

    @property
    def target(self) -> Vertex:
        return self.arrows[-1].target if self.arrows else self.base

    def as_path(self) -> Path:
        return Path((self.base,) + tuple(a.target for a in self.arrows))


@dataclass(frozen=True)
class Graph:
    """
    Finite simple connected graph.

    Vertices keep the order they are given in; edges are unordered pairs.
    """
    vertices: Tuple[Vertex, ...]
    edges: FrozenSet[FrozenSet[Vertex]]
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError(f"graph {self.name}: duplicate vertex ids")
        known = set(self.vertices)
        for edge in self.edges:
            if len(edge) != 2:
                raise InputError(f"graph {self.name}: self-loop on vertex {next(iter(edge))}")
            missing = set(edge) - known
            if missing:
                raise InputError(f"graph {self.name}: edge uses unknown vertex {sorted(missing)[0]}")
        if self.vertices and not self._is_connected():
            raise InputError(f"graph {self.name} is not connected")

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[Vertex, Vertex]], name: str = "custom",
                   vertices: Iterable[Vertex] = None) -> "Graph":
        """Build a graph from (u, v) pairs; repeated pairs collapse, self-loops are rejected."""
        pairs = []
        for u, v in edges:
            if u == v:
                raise InputError(f"graph {name}: self-loop on vertex {u}")
            pairs.append(frozenset((u, v)))
        if vertices is None:
            vertices = sorted({v for pair in pairs for v in pair})
        return cls(tuple(vertices), frozenset(pairs), name)

    @cached_property
    def neighbors(self) -> Dict[Vertex, Tuple[Vertex, ...]]:
        nbrs: Dict[Vertex, List[Vertex]] = {v: [] for v in self.vertices}
        for edge in self.edges:
            u, v = tuple(edge)
            nbrs[u].append(v)
            nbrs[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nbrs.items()}

    @cached_property
    def index(self) -> Dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def has_vertex(self, v: Vertex) -> bool:
        return v in self.index

    def adjacent(self, u: Vertex, v: Vertex) -> bool:
        return frozenset((u, v)) in self.edges

    def adjacency_matrix(self) -> np.ndarray:
        n = len(self.vertices)
        Y = np.zeros((n, n))
        for edge in self.edges:
            u, v = tuple(edge)
            Y[self.index[u], self.index[v]] = 1.0
            Y[self.index[v], self.index[u]] = 1.0
        return Y

    def is_path(self, path: Path) -> bool:
        return all(self.has_vertex(v) for v in path.vertices) and all(
            self.adjacent(a.source, a.target) for a in path.arrows
        )

    def _is_connected(self) -> bool:
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            u = stack.pop()
            for v in self.neighbors[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(self.vertices)


def paths_from(graph: Graph, base: Vertex, k: int) -> List[Path]:
    """
    Enumerate the source fiber: all length-k paths starting at base.

    Returned in lexicographic order of the visited vertex sequence.
    """
    if not graph.has_vertex(base):
        raise InputError(f"vertex {base} is not in graph {graph.name}")
    if k < 1:
        raise InputError(f"path length must be positive, got {k}")

    result: List[Path] = []
    stack: List[Tuple[Vertex, ...]] = [(base,)]
    while stack:
        seq = stack.pop()
        if len(seq) == k + 1:
            result.append(Path(seq))
            continue
        # reversed push keeps the pop order lexicographic
        for v in reversed(graph.neighbors[seq[-1]]):
            stack.append(seq + (v,))
    return result


def closed_paths(graph: Graph, k: int) -> List[Path]:
    """All closed length-k paths over every base vertex."""
    out: List[Path] = []
    for base in sorted(graph.vertices):
        out.extend(p for p in paths_from(graph, base, k) if p.target == base)
    return out


def reduce(path: Path) -> ReducedWord:
    """Free reduction: cancel every adjacent arrow/inverse pair."""
    stack: List[Arrow] = []
    for arrow in path.arrows:
        if stack and stack[-1] == arrow.inverse():
            stack.pop()
        else:
            stack.append(arrow)
    return ReducedWord(path.base, tuple(stack))
