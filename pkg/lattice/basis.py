"""
Closed-path state spaces of the periodic height chain and dense operators on them.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Tuple

import numpy as np

from config import get_settings
from groupoid.graph import Graph, Vertex, closed_paths
from utils.errors import InputError, ShapeError
from utils.logger import VerifyLogger

logger = logging.getLogger(__name__)

State = Tuple[Vertex, ...]


@dataclass(frozen=True, eq=False)
class ClosedPathBasis:
    """States (a_0, ..., a_{N-1}) with a_i adjacent to a_{i+1 mod N}, in lexicographic order."""
    graph: Graph
    N: int
    states: Tuple[State, ...]

    @classmethod
    def build(cls, graph: Graph, N: int) -> "ClosedPathBasis":
        if N < 1:
            raise InputError(f"number of sites must be positive, got N={N}")
        expected = int(round(np.trace(np.linalg.matrix_power(graph.adjacency_matrix(), N))))
        cap = get_settings().max_dense_dim
        if expected > cap:
            raise InputError(
                f"{graph.name} with N={N} has {expected} closed paths (dense cap {cap}); lower N or raise MAX_DENSE_DIM"
            )
        states = tuple(p.vertices[:-1] for p in closed_paths(graph, N))
        if len(states) != expected:
            raise ShapeError(f"closed-path count {len(states)} differs from trace(Y^N) = {expected}")
        VerifyLogger.lattice_built(f"{graph.name} N={N}", len(states))
        return cls(graph, N, states)

    @cached_property
    def index(self) -> Dict[State, int]:
        return {s: i for i, s in enumerate(self.states)}

    @property
    def dimension(self) -> int:
        return len(self.states)


@dataclass(frozen=True, eq=False)
class LatticeOperator:
    """Dense matrix on a closed-path basis (rows: out states, columns: in states)."""
    basis: ClosedPathBasis
    matrix: np.ndarray
    label: str

    def __matmul__(self, other: "LatticeOperator") -> "LatticeOperator":
        _same_basis(self, other)
        return LatticeOperator(self.basis, self.matrix @ other.matrix, f"{self.label}*{other.label}")


def _same_basis(A: LatticeOperator, B: LatticeOperator):
    if A.basis is not B.basis and (A.basis.graph != B.basis.graph or A.basis.N != B.basis.N):
        raise ShapeError(f"operators live on different bases ({A.label} vs {B.label})")


def rotate(state: State) -> State:
    """(a_0, ..., a_{N-1}) -> (a_{N-1}, a_0, ..., a_{N-2})."""
    return state[-1:] + state[:-1]


def translation(basis: ClosedPathBasis) -> LatticeOperator:
    """Permutation v_1 (x) ... (x) v_N -> v_N (x) v_1 (x) ... (x) v_{N-1}."""
    n = basis.dimension
    P = np.zeros((n, n))
    for j, p in enumerate(basis.states):
        P[basis.index[rotate(p)], j] = 1.0
    return LatticeOperator(basis, P, "translation")


def commutator_residual(A: LatticeOperator, B: LatticeOperator) -> float:
    """
    ||AB - BA||_max / max(1, ||A||_inf ||B||_inf).

    The row-sum norms bound every entry of AB and BA, so the residual is
    relative to the size of the products once they exceed 1. Transfer
    matrices on longer rows have large entries.
    """
    _same_basis(A, B)
    if A.basis.dimension == 0:
        return 0.0
    scale = max(1.0, float(np.linalg.norm(A.matrix, np.inf) * np.linalg.norm(B.matrix, np.inf)))
    return float(np.max(np.abs(A.matrix @ B.matrix - B.matrix @ A.matrix))) / scale


def sector_restriction(op: LatticeOperator, a: Vertex, b: Vertex) -> np.ndarray:
    """Block with rows on states starting at a and columns on states starting at b."""
    rows = [i for i, s in enumerate(op.basis.states) if s[0] == a]
    cols = [j for j, s in enumerate(op.basis.states) if s[0] == b]
    return op.matrix[np.ix_(rows, cols)]
