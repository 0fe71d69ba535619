"""
Row-to-row transfer matrix of the face model and its partition function.

The face between bottom state p and top state q at site i has corners
SW p_i, SE p_(i+1), NW q_i, NE q_(i+1); its weight is the R(z, q_i) block
taking the path (q_i, p_i, p_(i+1)) to (q_i, q_(i+1), p_(i+1)).
"""

import logging
from typing import Optional

import numpy as np

from baxter.rmatrix import RFamily
from groupoid.graph import Path
from lattice.basis import ClosedPathBasis, LatticeOperator

logger = logging.getLogger(__name__)

OVERFLOW_WARN = 1e300


def transfer_matrix(R: RFamily, z: complex, basis: ClosedPathBasis) -> LatticeOperator:
    """M(z)[q, p] = prod_i R(z, q_i) face weight; M(0) is the translation."""
    ops = R.at(z)
    graph, N = basis.graph, basis.N
    n = basis.dimension
    M = np.zeros((n, n), dtype=complex)
    undefined = 0
    for j, p in enumerate(basis.states):
        for i, q in enumerate(basis.states):
            if not all(graph.adjacent(q[k], p[k]) for k in range(N)):
                continue
            weight = 1 + 0j
            for k in range(N):
                op = ops.get(q[k])
                if op is None:
                    undefined += 1
                    weight = 0j
                    break
                k1 = (k + 1) % N
                weight *= op.get(Path.of(q[k], p[k], p[k1]), Path.of(q[k], q[k1], p[k1]))
                if weight == 0:
                    break
            M[i, j] = weight
    if undefined:
        logger.warning(f"⚠️ {undefined} faces had no R operator at their NW corner; treated as zero")
    return LatticeOperator(basis, M, f"transfer(z={complex(z)})")


def partition_function(R: RFamily, z: complex, N: int, M_rows: int,
                       basis: Optional[ClosedPathBasis] = None) -> complex:
    """trace(M(z)^M_rows) by repeated multiplication."""
    basis = basis if basis is not None else ClosedPathBasis.build(R.graph, N)
    M = transfer_matrix(R, z, basis).matrix
    power = np.eye(basis.dimension, dtype=complex)
    for _ in range(M_rows):
        power = power @ M
    value = complex(np.trace(power))
    if abs(value) > OVERFLOW_WARN or not np.isfinite(value):
        logger.warning(f"⚠️ Partition function magnitude {abs(value):.3e} is near floating-point overflow")
    return value
