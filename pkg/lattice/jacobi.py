"""
Cyclic Jacobi diagonalization for the real symmetric lattice operators.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from config import get_settings, get_tolerances
from lattice.basis import LatticeOperator
from utils.errors import NumericError, PreconditionError

logger = logging.getLogger(__name__)

SYMMETRY_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    sweeps: int
    off_norm: float
    reconstruction_residual: float
    orthogonality_residual: float


def _off_norm(A: np.ndarray) -> float:
    return float(np.sqrt(np.sum((A - np.diag(np.diag(A))) ** 2)))


def diagonalize(matrix: Union[np.ndarray, LatticeOperator], tol: Optional[float] = None,
                max_sweeps: Optional[int] = None) -> Spectrum:
    """
    Rotate away off-diagonal entries pair by pair until the off-diagonal
    Frobenius norm drops below tol. Eigenvalues come back ascending with
    eigenvectors as matching columns. A LatticeOperator is diagonalized
    through its matrix.
    """
    tol = tol if tol is not None else get_tolerances()["jacobi"]
    max_sweeps = max_sweeps if max_sweeps is not None else get_settings().jacobi_max_sweeps

    if isinstance(matrix, LatticeOperator):
        matrix = matrix.matrix
    M = np.asarray(matrix)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise PreconditionError(f"Jacobi needs a square matrix, got shape {M.shape}")
    if np.iscomplexobj(M):
        if M.size and np.max(np.abs(M.imag)) > SYMMETRY_TOL:
            raise PreconditionError("Jacobi needs a real matrix; imaginary part exceeds 1e-10")
        M = M.real
    M = M.astype(float)
    if M.size and np.max(np.abs(M - M.T)) > SYMMETRY_TOL:
        raise PreconditionError(f"Jacobi needs a symmetric matrix; asymmetry {np.max(np.abs(M - M.T)):.3e}")

    n = M.shape[0]
    A = M.copy()
    V = np.eye(n)
    sweeps = 0
    while _off_norm(A) >= tol:
        if sweeps >= max_sweeps:
            raise NumericError(f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(A):.3e})")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                if A[p, q] == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2 * A[p, q])
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1 + tau * tau))
                c = 1 / math.sqrt(1 + t * t)
                s = t * c
                Ap, Aq = A[:, p].copy(), A[:, q].copy()
                A[:, p], A[:, q] = c * Ap - s * Aq, s * Ap + c * Aq
                Ap, Aq = A[p, :].copy(), A[q, :].copy()
                A[p, :], A[q, :] = c * Ap - s * Aq, s * Ap + c * Aq
                Vp, Vq = V[:, p].copy(), V[:, q].copy()
                V[:, p], V[:, q] = c * Vp - s * Vq, s * Vp + c * Vq

    order = np.argsort(np.diag(A), kind="stable")
    values = np.diag(A)[order]
    vectors = V[:, order]
    recon = float(np.max(np.abs(M - (vectors * values) @ vectors.T), initial=0.0))
    ortho = float(np.max(np.abs(vectors.T @ vectors - np.eye(n)), initial=0.0))
    logger.info(f"Jacobi converged in {sweeps} sweeps (n={n}, off-norm {_off_norm(A):.3e})")
    return Spectrum(values, vectors, sweeps, _off_norm(A), recon, ortho)
