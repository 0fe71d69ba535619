import pytest

from config import get_settings, set_tol_profile
from models.schemas import Report, ResidualItem
from suite.state import create_initial_state
from suite.workflow import NODES, _catalog_node, _guarded, _lattice_node, _prepare_node, create_suite_workflow, \
    run_suite
from utils.errors import NumericError


def test_initial_state_uses_configured_profile():
    state = create_initial_state()
    assert state["profile"] == "default"
    assert state["reports"] == [] and state["errors"] == []
    assert create_initial_state("strict")["profile"] == "strict"


def test_node_order():
    assert [name for name, _ in NODES] == [
        "prepare", "catalog", "tl_local", "functional", "ybe", "hecke", "bmw", "lattice", "degeneration",
    ]
    assert create_suite_workflow() is not None


def test_guarded_records_toolkit_errors():
    def broken():
        raise NumericError("did not converge")

    out = _guarded("lattice", broken)
    assert out == {"reports": [], "errors": ["lattice: did not converge"]}

    report = Report.from_items("x", [ResidualItem(item="a", residual=0.0)], 1.0)
    assert _guarded("x", lambda: [report])["reports"] == [report]


def test_prepare_switches_profile():
    _prepare_node(create_initial_state("strict"))
    assert get_settings().tol_profile == "strict"


def test_lattice_node_reports():
    out = _lattice_node(create_initial_state())
    assert out["errors"] == []
    assert [r.check for r in out["reports"]] == ["commute", "hamiltonian", "jacobi", "spectrum"]
    assert all(r.passed for r in out["reports"])




def test_catalog_node_passes_under_strict():
    set_tol_profile("strict")
    report = _catalog_node(create_initial_state("strict"))["reports"][0]
    assert report.inputs["tol"] == pytest.approx(1e-11)
    assert report.passed, report.max_residual


def test_lattice_node_passes_under_strict():
    set_tol_profile("strict")
    out = _lattice_node(create_initial_state("strict"))
    assert out["errors"] == []
    failing = [(r.check, r.max_residual) for r in out["reports"] if not r.passed]
    assert failing == []


@pytest.mark.slow
def test_battery_passes_under_strict():
    summary = run_suite("strict")
    assert summary.profile == "strict"
    assert summary.errors == []
    assert [r.check for r in summary.reports if not r.passed] == []
    assert summary.passed
