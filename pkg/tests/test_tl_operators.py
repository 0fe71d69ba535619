import json

import numpy as np
import pytest

from catalog import AFFINE_LISTING, CLASSICAL_LISTING, build_diagram, pf_eigen
from groupoid.fiber import residual
from groupoid.graph import Path
from models.schemas import FamilyFile
from operators import (
    build_TL_graph,
    build_TL_line,
    check_diagram_algebra,
    check_dTL,
    check_global,
    dump_family,
    hecke_from_TL,
    load_family,
    q_from_kappa,
    tl_from_hecke,
)
from operators.families import line_graph, scaled
from utils.errors import DomainError, InputError, PreconditionError


@pytest.mark.parametrize("family,L", CLASSICAL_LISTING + AFFINE_LISTING)
def test_graph_families_satisfy_local_relations(family, L):
    graph = build_diagram(family, L)
    report = check_dTL(build_TL_graph(graph, pf_eigen(graph)))
    assert report.passed, report.max_residual
    assert report.max_residual < 1e-10
    assert not report.skipped


def test_graph_family_weights(a4_family):
    S = pf_eigen(a4_family.graph).eigenvector
    T2 = a4_family.T[2]
    w = T2.get(Path.of(2, 1, 2), Path.of(2, 3, 2))
    assert w == pytest.approx(np.sqrt(S[1] * S[3]) / S[2])
    assert a4_family.kappa_is_constant()


@pytest.mark.parametrize("kind", ["tri", "hyp"])
def test_line_families_pass_on_interior(kind):
    family = build_TL_line(kind, 3)
    assert family.vertices == tuple(range(1, 12))
    report = check_dTL(family)
    assert report.passed
    # the two window ends cannot host order-3 checks
    assert report.skipped


def test_elliptic_line_family(elliptic):
    family = build_TL_line("ell", elliptic.L, params=elliptic)
    report = check_dTL(family, tol=1e-9)
    assert report.passed
    assert not family.kappa_is_constant(tol=1e-6)


def test_line_family_input_errors(elliptic):
    with pytest.raises(InputError):
        build_TL_line("ell", 4)
    with pytest.raises(InputError):
        build_TL_line("tri", 3, window=(0, 3))
    with pytest.raises(InputError):
        build_TL_line("cubic", 3)
    with pytest.raises(DomainError):
        build_TL_line("tri", 1)


def test_line_graph_name():
    assert line_graph(0, 12).name == "line[0,12]"


def test_pf_from_other_graph_is_rejected():
    with pytest.raises(InputError):
        build_TL_graph(build_diagram("A", 4), pf_eigen(build_diagram("A", 5)))


def test_global_relations(a5_family):
    report = check_global(a5_family, 4)
    assert report.passed
    with pytest.raises(InputError):
        check_global(a5_family, 2)


def test_global_relations_on_line_family():
    report = check_global(build_TL_line("tri", 3), 4)
    assert report.passed


def test_diagram_algebra_components(e6_family):
    report = check_diagram_algebra(e6_family, 4)
    assert report.passed
    assert {i.item.split()[1] for i in report.checked} >= {"TLa", "TLb", "TLc"}


def test_diagram_algebra_needs_constant_kappa(elliptic):
    with pytest.raises(PreconditionError):
        check_diagram_algebra(build_TL_line("ell", elliptic.L, params=elliptic), 3)


def test_q_from_kappa():
    q = q_from_kappa(2 * np.cos(np.pi / 6))
    assert q == pytest.approx(np.exp(1j * np.pi / 6))
    assert q + 1 / q == pytest.approx(2 * np.cos(np.pi / 6))


def test_tl_hecke_round_trip(a5_family):
    back = tl_from_hecke(hecke_from_TL(a5_family))
    for a in a5_family.vertices:
        assert residual(back.T[a], a5_family.T[a]) < 1e-14
        assert back.kappa[a] == pytest.approx(a5_family.kappa[a])


def test_hecke_rejects_mismatched_q(a5_family):
    with pytest.raises(InputError):
        hecke_from_TL(a5_family, qbar=2.0)


def test_scaled_multiplies_per_vertex(a4_family):
    doubled = scaled(a4_family.T, {a: 2.0 for a in a4_family.vertices})
    p, q = Path.of(3, 2, 3), Path.of(3, 4, 3)
    assert doubled[3].get(p, q) == pytest.approx(2 * a4_family.T[3].get(p, q))


def test_family_file_round_trip(tmp_path, a4_family):
    record = dump_family(a4_family)
    path = tmp_path / "a4.json"
    path.write_text(json.dumps(record.model_dump(mode="json", by_alias=True)))
    loaded = load_family(path)
    assert loaded.graph == a4_family.graph
    for a in a4_family.vertices:
        assert residual(loaded.T[a], a4_family.T[a]) == 0.0
    assert check_dTL(loaded).passed


def test_family_file_errors(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(InputError):
        load_family(missing)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_family(bad)
    no_scalars = tmp_path / "empty.json"
    no_scalars.write_text(json.dumps({"graph": [[1, 2], [2, 3]]}))
    with pytest.raises(InputError):
        load_family(no_scalars)


def test_family_file_schema_accepts_aliases():
    record = FamilyFile.model_validate({
        "graph": [[1, 2], [2, 3]],
        "blocks": [{"base": 2, "in": [2, 1, 2], "out": [2, 3, 2], "re": 0.5}],
        "kappa": [{"vertex": 2, "re": 1.0}],
    })
    assert record.blocks[0].in_path == [2, 1, 2]
