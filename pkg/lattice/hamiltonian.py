"""
Periodic dynamical spin-chain Hamiltonian: the log-derivative of the transfer
matrix at z = 0, written as a sum of local round-trip moves.
"""

import logging

import numpy as np

from groupoid.graph import Path
from lattice.basis import ClosedPathBasis, LatticeOperator
from operators.families import TLFamily
from utils.errors import MissingVertexError

logger = logging.getLogger(__name__)


def hamiltonian(family: TLFamily, basis: ClosedPathBasis) -> LatticeOperator:
    """
    H = sum_k h_k over all N sites. h_k replaces a_k by y when
    a_(k-1) = a_(k+1), with the T(a_(k-1)) block of that round trip.
    """
    N, graph = basis.N, basis.graph
    n = basis.dimension
    H = np.zeros((n, n), dtype=complex)
    for j, p in enumerate(basis.states):
        for k in range(N):
            left, right = p[(k - 1) % N], p[(k + 1) % N]
            if left != right:
                continue
            op = family.T.get(left)
            if op is None:
                raise MissingVertexError(left)
            for y in graph.neighbors[left]:
                weight = op.get(Path.of(left, p[k], left), Path.of(left, y, left))
                if weight == 0:
                    continue
                q = p[:k] + (y,) + p[k + 1:]
                H[basis.index[q], j] += weight
    if np.max(np.abs(H.imag), initial=0.0) == 0.0:
        H = H.real
    return LatticeOperator(basis, H, "hamiltonian")
