import itertools

import numpy as np
import pytest

from baxter import SpectralParam, baxterize_TL
from catalog import build_diagram, pf_eigen
from config import get_settings
from groupoid.graph import Path
from lattice import (
    ClosedPathBasis,
    check_commuting,
    check_hamiltonian,
    check_spectrum,
    commutator_residual,
    diagonalize,
    hamiltonian,
    partition_function,
    rotate,
    sector_restriction,
    transfer_matrix,
    translation,
)
from lattice.basis import LatticeOperator
from operators import build_TL_graph
from utils.errors import InputError, NumericError, PreconditionError, ShapeError


@pytest.fixture(scope="module")
def a4_basis(a4_family):
    return ClosedPathBasis.build(a4_family.graph, 6)


# ============================================================================
# BASIS AND TRANSLATION
# ============================================================================

def test_a4_six_sites_has_36_states(a4_basis):
    assert a4_basis.dimension == 36
    assert list(a4_basis.states) == sorted(a4_basis.states)


@pytest.mark.parametrize("family,L", [("A", 3), ("D", 5), ("E6", None), ("A_aff", 3)])
@pytest.mark.parametrize("N", [2, 4, 5])
def test_basis_count_is_trace_of_power(family, L, N):
    graph = build_diagram(family, L)
    basis = ClosedPathBasis.build(graph, N)
    expected = np.trace(np.linalg.matrix_power(graph.adjacency_matrix(), N))
    assert basis.dimension == int(round(expected))
    for s in basis.states:
        assert all(graph.adjacent(s[k], s[(k + 1) % N]) for k in range(N))


def test_dense_cap_is_enforced(monkeypatch, a4_family):
    monkeypatch.setattr(get_settings(), "max_dense_dim", 10)
    with pytest.raises(InputError):
        ClosedPathBasis.build(a4_family.graph, 6)


def test_translation_is_a_permutation_of_order_n():
    basis = ClosedPathBasis.build(build_diagram("A", 3), 4)
    P = translation(basis).matrix
    assert (P.sum(axis=0) == 1).all() and (P.sum(axis=1) == 1).all()
    np.testing.assert_array_equal(np.linalg.matrix_power(P, 4), np.eye(basis.dimension))


def test_single_site_translation_is_trivial():
    basis = ClosedPathBasis.build(build_diagram("A", 3), 1)
    assert translation(basis).matrix.shape == (0, 0)


def test_rotate():
    assert rotate((1, 2, 3, 2)) == (2, 1, 2, 3)


# ============================================================================
# TRANSFER MATRICES
# ============================================================================

def test_transfer_at_zero_is_translation(a4_R, a4_basis):
    M0 = transfer_matrix(a4_R, 0.0, a4_basis).matrix
    np.testing.assert_array_equal(M0, translation(a4_basis).matrix)


def test_transfer_matrices_commute(a4_R, a4_basis):
    A = transfer_matrix(a4_R, 0.2, a4_basis)
    B = transfer_matrix(a4_R, 0.5, a4_basis)
    assert commutator_residual(A, B) < 1e-9
    assert np.max(np.abs(A.matrix - B.matrix)) > 1e-3


def test_commuting_report_grid(a4_R, a4_basis):
    report = check_commuting(a4_R, a4_basis)
    assert report.passed
    assert len(report.checked) == 2 + 9


def test_partition_function_at_zero(a4_R, a4_basis):
    assert partition_function(a4_R, 0.0, 6, 6, basis=a4_basis) == pytest.approx(36)
    assert partition_function(a4_R, 0.0, 6, 1, basis=a4_basis) == pytest.approx(
        np.trace(translation(a4_basis).matrix))


def _face(R, z, sw, se, nw, ne):
    return R.R(z, nw).get(Path.of(nw, sw, se), Path.of(nw, ne, se))


def test_partition_function_matches_configuration_sum():
    graph = build_diagram("A", 3)
    R = baxterize_TL(build_TL_graph(graph, pf_eigen(graph)), SpectralParam.tri(np.pi / 4))
    z, N, rows = 0.37, 2, 2
    states = ClosedPathBasis.build(graph, N).states
    brute = 0j
    for config in itertools.product(states, repeat=rows):
        weight = 1 + 0j
        for r in range(rows):
            p, q = config[r], config[(r + 1) % rows]
            for k in range(N):
                k1 = (k + 1) % N
                if not graph.adjacent(q[k], p[k]):
                    weight = 0j
                    break
                weight *= _face(R, z, p[k], p[k1], q[k], q[k1])
        brute += weight
    assert partition_function(R, z, N, rows) == pytest.approx(brute, rel=1e-12, abs=1e-12)


def test_sector_restriction_shapes(a4_R, a4_basis):
    M = transfer_matrix(a4_R, 0.3, a4_basis)
    block = sector_restriction(M, 1, 2)
    rows = sum(1 for s in a4_basis.states if s[0] == 1)
    cols = sum(1 for s in a4_basis.states if s[0] == 2)
    assert block.shape == (rows, cols)


def test_commutator_residual_is_relative(a4_family, a4_basis):
    H = hamiltonian(a4_family, a4_basis)
    D = LatticeOperator(a4_basis, np.diag(np.arange(a4_basis.dimension, dtype=float)), "diag")
    base = commutator_residual(H, D)
    assert base > 0
    for c in (10.0, 1e4):
        scaled = LatticeOperator(a4_basis, c * H.matrix, "cH")
        assert commutator_residual(scaled, D) == pytest.approx(base, rel=1e-12)


def test_commutator_requires_same_basis(a4_family, a4_basis):
    other = ClosedPathBasis.build(a4_family.graph, 4)
    with pytest.raises(ShapeError):
        commutator_residual(translation(a4_basis), translation(other))


# ============================================================================
# HAMILTONIAN AND EIGENSOLVER
# ============================================================================

def test_two_site_a2_hamiltonian_is_twice_identity(a2_family):
    basis = ClosedPathBasis.build(a2_family.graph, 2)
    assert basis.states == ((1, 2), (2, 1))
    H = hamiltonian(a2_family, basis)
    np.testing.assert_allclose(H.matrix, 2 * np.eye(2), atol=1e-15)
    spectrum = diagonalize(H.matrix)
    np.testing.assert_allclose(spectrum.eigenvalues, [2.0, 2.0], atol=1e-12)


def test_hamiltonian_symmetric_and_conserved(a4_family, a4_R, a4_basis):
    H = hamiltonian(a4_family, a4_basis)
    assert np.max(np.abs(H.matrix - H.matrix.T)) == 0.0
    assert commutator_residual(H, translation(a4_basis)) < 1e-14
    for w in (0.1, 0.3, 0.5):
        assert commutator_residual(H, transfer_matrix(a4_R, w, a4_basis)) < 1e-9
    assert check_hamiltonian(a4_family, a4_R, a4_basis).passed


def test_jacobi_against_numpy(a4_family, a4_basis):
    H = hamiltonian(a4_family, a4_basis).matrix
    spectrum = diagonalize(H)
    np.testing.assert_allclose(spectrum.eigenvalues, np.linalg.eigvalsh(H), atol=1e-10)
    assert spectrum.reconstruction_residual < 1e-10
    assert spectrum.orthogonality_residual < 1e-10
    assert list(spectrum.eigenvalues) == sorted(spectrum.eigenvalues)


def test_jacobi_accepts_lattice_operator(a4_family, a4_basis):
    H = hamiltonian(a4_family, a4_basis)
    from_operator = diagonalize(H)
    from_matrix = diagonalize(H.matrix)
    np.testing.assert_array_equal(from_operator.eigenvalues, from_matrix.eigenvalues)
    assert from_operator.sweeps == from_matrix.sweeps


def test_jacobi_small_cases():
    spectrum = diagonalize(np.diag([3.0, -1.0, 2.0]))
    np.testing.assert_array_equal(spectrum.eigenvalues, [-1.0, 2.0, 3.0])
    assert spectrum.sweeps == 0
    flip = diagonalize(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(flip.eigenvalues, [-1.0, 1.0], atol=1e-14)


def test_jacobi_refuses_nonsymmetric():
    with pytest.raises(PreconditionError):
        diagonalize(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(PreconditionError):
        diagonalize(np.array([[0.0, 1j], [-1j, 0.0]]))


def test_jacobi_sweep_cap():
    rng = np.random.default_rng(7)
    A = rng.normal(size=(8, 8))
    with pytest.raises(NumericError):
        diagonalize(A + A.T, max_sweeps=1)


def test_spectrum_report(a2_family):
    H = hamiltonian(a2_family, ClosedPathBasis.build(a2_family.graph, 2))
    report, spectrum = check_spectrum(H, expected=[2.0, 2.0])
    assert report.passed
    assert report.inputs["eigenvalues"] == pytest.approx([2.0, 2.0])
