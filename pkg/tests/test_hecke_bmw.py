import numpy as np
import pytest

from baxter import baxterize_BMW
from catalog import build_diagram
from groupoid.fiber import compose, identity, norm_max, residual
from operators import (
    BMWFamily,
    bmw_from_hecke,
    build_TL_line,
    check_dBMW,
    check_dHecke,
    check_global_hecke,
    hecke_from_TL,
    murphy_check,
)
from utils.errors import DomainError, InputError, PreconditionError


def test_hecke_relations_on_a5(a5_hecke):
    report = check_dHecke(a5_hecke)
    assert report.passed
    assert report.max_residual < 1e-11


def test_hecke_q_is_root_of_unity(a5_hecke):
    for q in a5_hecke.qbar.values():
        assert q == pytest.approx(np.exp(1j * np.pi / 6))


def test_hecke_inverse_closed_form(a5_hecke):
    graph = a5_hecke.graph
    for a in a5_hecke.vertices:
        assert residual(compose(a5_hecke.S[a], a5_hecke.S_inv(a)), identity(graph, a, 2)) < 1e-12


def test_global_hecke_relations(a5_hecke):
    assert check_global_hecke(a5_hecke, 4).passed


def test_global_hecke_on_line_interior():
    report = check_global_hecke(hecke_from_TL(build_TL_line("tri", 3)), 3)
    assert report.passed
    assert report.skipped


@pytest.mark.parametrize("N", [3, 4])
def test_murphy_relations(a5_hecke, N):
    report = murphy_check(a5_hecke, N)
    assert report.passed
    assert report.max_residual < 1e-10


def test_murphy_needs_constant_q(elliptic):
    hecke = hecke_from_TL(build_TL_line("ell", elliptic.L, params=elliptic))
    with pytest.raises(PreconditionError):
        murphy_check(hecke, 3)
    with pytest.raises(InputError):
        murphy_check(hecke, 2)


def test_hecke_degenerate_bmw_has_zero_contraction(a5_hecke):
    bmw = bmw_from_hecke(a5_hecke)
    for a in bmw.vertices:
        assert norm_max(bmw.K(a)) < 1e-12


def test_bmw_relations(a5_hecke):
    report = check_dBMW(bmw_from_hecke(a5_hecke, nubar=1.0))
    assert report.passed
    names = {i.item.split(" ", 1)[1] for i in report.checked}
    assert "braid" in names
    assert "K23U12K23 eps=-1" in names


@pytest.mark.parametrize("nubar,passes", [(1.0, True), (2.0, False)])
def test_bmw_identity_family_needs_unit_nu(nubar, passes):
    graph = build_diagram("A", 3)
    bmw = BMWFamily(graph=graph, U={a: identity(graph, a, 2) for a in graph.vertices},
                    qbar={a: 2.0 for a in graph.vertices}, nubar={a: nubar for a in graph.vertices})
    report = check_dBMW(bmw)
    assert report.passed is passes
    if not passes:
        assert report.max_residual == pytest.approx(1.0)


def test_bmw_singular_parameters(a5_hecke):
    bmw = bmw_from_hecke(a5_hecke)
    with pytest.raises(DomainError):
        baxterize_BMW(bmw, 1.0, 1.0)
