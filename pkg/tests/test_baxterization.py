import numpy as np
import pytest

from baxter import (
    SpectralParam,
    abf_family,
    baxterize_Hecke,
    baxterize_TL,
    build_ABF_R,
    check_degeneration,
    check_dYBE,
    check_dYBE_2param,
    check_functional_relation,
    check_gdYBE,
    check_obstruction,
    elliptic_obstruction,
    line_matrix,
    ratio_triples,
    sample_pairs,
    sigma_from_hecke,
    spectral_param,
)
from baxter.spectral import halton
from catalog import pf_eigen
from groupoid.fiber import identity, residual
from operators import bmw_from_hecke, build_TL_graph, build_TL_line
from utils.errors import DomainError, InputError, PreconditionError, SingularityError


def test_halton_sequence():
    assert [halton(k, 2) for k in (1, 2, 3)] == [0.5, 0.25, 0.75]
    assert halton(1, 3) == pytest.approx(1 / 3)


def test_sample_pairs_stay_inside_box():
    pairs = sample_pairs(20, scale=2.0)
    assert len(pairs) == 20
    assert all(0.1 < z < 0.9 and 0.1 < w < 0.9 for z, w in pairs)
    assert pairs == sample_pairs(20, scale=2.0)


def test_ratio_triples_start():
    triples = ratio_triples(5)
    assert triples[0] == (1.0, 1.7, 2.3)
    assert all(u1 < u2 < u3 for u1, u2, u3 in triples)


def test_spectral_param_pole_guard():
    f = SpectralParam.tri(np.pi / 6)
    assert f(0) == 0
    with pytest.raises(SingularityError):
        f(np.pi / 6)
    with pytest.raises(InputError):
        spectral_param("tri")
    with pytest.raises(InputError):
        spectral_param("cubic", 1.0)


@pytest.mark.parametrize("name,kappa", [
    ("tri", 2 * np.cos(np.pi / 6)),
    ("hyp", 2 * np.cosh(np.pi / 4)),
    ("rational", 2.0),
])
def test_functional_relation_grid(name, kappa):
    lam = {"tri": np.pi / 6, "hyp": np.pi / 4, "rational": None}[name]
    f = spectral_param(name, lam)
    report = check_functional_relation(f, {0: kappa})
    assert report.passed
    assert report.max_residual < 1e-12
    assert len(report.checked) == 20


def test_functional_relation_fails_for_wrong_kappa():
    report = check_functional_relation(SpectralParam.rational(), {0: 1.5})
    assert not report.passed


def test_elliptic_obstruction(elliptic):
    assert elliptic_obstruction(elliptic) > 1e-3
    report = check_obstruction(elliptic)
    assert report.passed
    assert report.inputs["obstruction"] > report.inputs["threshold"]


def test_baxterize_refuses_elliptic_kappa(elliptic):
    family = build_TL_line("ell", elliptic.L, params=elliptic)
    with pytest.raises(PreconditionError):
        baxterize_TL(family, SpectralParam.tri(np.pi / 5))


def test_dybe_on_a5(a5_family):
    R = baxterize_TL(a5_family, SpectralParam.tri(np.pi / 6))
    assert residual(R.R(0.0, 3), identity(a5_family.graph, 3, 2)) == 0.0
    report = check_dYBE(R)
    assert report.passed
    assert report.max_residual < 1e-9


def test_dybe_on_e6(e6_family):
    report = check_dYBE(baxterize_TL(e6_family, SpectralParam.tri(np.pi / 12)))
    assert report.passed


def test_eigenvector_rescaling_leaves_family_unchanged(e6_family):
    graph = e6_family.graph
    rescaled = build_TL_graph(graph, pf_eigen(graph).rescaled(3.7))
    for d in graph.vertices:
        assert residual(rescaled.T[d], e6_family.T[d]) < 1e-14
    assert check_dYBE(baxterize_TL(rescaled, SpectralParam.tri(np.pi / 12))).passed


def test_dybe_rational_on_affine(d5_aff_family):
    report = check_dYBE(baxterize_TL(d5_aff_family, SpectralParam.rational()))
    assert report.passed


@pytest.mark.parametrize("kind", ["tri", "hyp"])
def test_dybe_on_line_interior(kind):
    family = build_TL_line(kind, 3)
    f = SpectralParam.tri(np.pi / 4) if kind == "tri" else SpectralParam.hyp(np.pi / 4)
    report = check_dYBE(baxterize_TL(family, f), samples=sample_pairs(5, f.scale))
    assert report.passed
    assert report.skipped


def test_dybe_detects_wrong_parameterization(a5_family):
    # tri with the wrong lambda violates the functional relation, so Baxterization is refused
    with pytest.raises(PreconditionError):
        baxterize_TL(a5_family, SpectralParam.tri(np.pi / 7))


def test_gdybe_with_functional_triple(a5_family):
    f = SpectralParam.tri(np.pi / 6)
    z, w = 0.2, 0.35
    report = check_gdYBE(a5_family, 3, f(z - w), f(z), f(w))
    assert report.passed


def test_abf_weights_and_dybe(elliptic):
    R = abf_family(elliptic)
    M = line_matrix(R.R(0.0, 5))
    np.testing.assert_allclose(M, np.eye(4), atol=1e-14)
    report = check_dYBE(R, samples=sample_pairs(5))
    assert report.passed
    assert report.max_residual < 1e-8


def test_line_matrix_marks_missing_paths(elliptic):
    R = abf_family(elliptic, window=(0, 6))
    M = line_matrix(R.R(0.2, 1))
    assert np.isnan(M[3, 3])
    assert not np.isnan(M[1, 2])


def test_abf_weights_need_interior_vertex(elliptic):
    with pytest.raises(DomainError):
        build_ABF_R(elliptic, 0.2, 0)
    M = line_matrix(build_ABF_R(elliptic, 0.2, 5))
    assert M[1, 2] == M[2, 1]
    assert M[0, 0] == M[3, 3] == 1


def test_abf_degenerates_to_trigonometric():
    report = check_degeneration(4)
    assert report.passed
    assert len(report.checked) == 5


def test_hecke_baxterization(a5_hecke):
    sigma, f = sigma_from_hecke(a5_hecke)
    R = baxterize_Hecke(a5_hecke.graph, sigma, f)
    assert check_dYBE(R).passed


def test_hecke_baxterization_rejects_bad_sigma(a5_hecke):
    sigma, f = sigma_from_hecke(a5_hecke)
    with pytest.raises(PreconditionError):
        baxterize_Hecke(a5_hecke.graph, sigma, {a: v + 0.1 for a, v in f.items()})


def test_two_parameter_dybe(a5_hecke):
    report = check_dYBE_2param(bmw_from_hecke(a5_hecke))
    assert report.passed
    assert len(report.inputs["triples"]) == 5
