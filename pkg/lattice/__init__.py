# Lattice package: closed-path chains, transfer matrices, Hamiltonians
from lattice.basis import (
    ClosedPathBasis,
    LatticeOperator,
    commutator_residual,
    rotate,
    sector_restriction,
    translation,
)
from lattice.transfer import partition_function, transfer_matrix
from lattice.hamiltonian import hamiltonian
from lattice.jacobi import Spectrum, diagonalize
from lattice.checks import check_commuting, check_hamiltonian, check_spectrum

__all__ = [
    "ClosedPathBasis",
    "LatticeOperator",
    "commutator_residual",
    "rotate",
    "sector_restriction",
    "translation",
    "partition_function",
    "transfer_matrix",
    "hamiltonian",
    "Spectrum",
    "diagonalize",
    "check_commuting",
    "check_hamiltonian",
    "check_spectrum",
]
