import json

import pytest

import main
from utils.logger import VerifyLogger


@pytest.fixture(autouse=True)
def quiet_logging(monkeypatch):
    # keep the colored stderr handler out of captured streams
    monkeypatch.setattr(VerifyLogger, "_configured", True)


def test_graphs_list_json(capsys):
    assert main.run(["graphs", "list", "--json"]) == 0
    entries = json.loads(capsys.readouterr().out)
    names = [e["name"] for e in entries]
    assert "E8" in names and "D4_aff" in names
    e6 = next(e for e in entries if e["name"] == "E6")
    assert e6["coxeter"] == 12
    assert e6["eigenvalue"] == pytest.approx(e6["expected"], abs=1e-10)


def test_verify_tl_json(capsys):
    assert main.run(["verify", "tl", "--graph", "E6", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass"] is True
    assert payload["check"] == "dTL"
    assert payload["inputs"]["tol"] == 1e-10


def test_verify_text_and_csv(capsys):
    assert main.run(["verify", "tl", "--graph", "A4"]) == 0
    assert "PASS" in capsys.readouterr().out
    assert main.run(["verify", "tl", "--graph", "A4", "--csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "check,item,residual,skipped,reason"
    assert len(lines) > 1


def test_failing_tolerance_exits_one(capsys):
    assert main.run(["verify", "functional", "--graph", "A5", "--tol", "0"]) == 1


def test_usage_errors_exit_two(capsys):
    assert main.run(["verify", "tl", "--graph", "E6", "--bogus"]) == 2
    assert main.run(["verify", "abf", "--tau", "not-a-number", "--L", "4"]) == 2
    assert main.run(["verify", "tl", "--graph", "Z9"]) == 2
    assert main.run(["verify", "tl"]) == 2
    assert main.run(["verify", "abf", "--L", "4"]) == 2


def test_build_then_verify_family_file(tmp_path, capsys):
    path = tmp_path / "a3.json"
    assert main.run(["build", "tl", "--graph", "A3", "--out", str(path)]) == 0
    record = json.loads(path.read_text())
    assert record["kappa"] and record["blocks"]
    assert main.run(["verify", "tl", "--family-file", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["pass"] is True


def test_build_hecke_feeds_tl_checks(tmp_path, capsys):
    path = tmp_path / "a5_hecke.json"
    assert main.run(["build", "hecke", "--graph", "A5", "--out", str(path)]) == 0
    assert main.run(["verify", "hecke", "--family-file", str(path)]) == 0
    assert main.run(["verify", "tl", "--family-file", str(path)]) == 0


def test_unwritable_output_exits_two(tmp_path, capsys):
    target = tmp_path / "missing" / "report.json"
    assert main.run(["verify", "tl", "--graph", "A3", "--json", "--out", str(target)]) == 2
    assert "cannot write" in capsys.readouterr().err


def test_transfer_check_commute(capsys):
    code = main.run(["transfer", "--graph", "A4", "--sites", "4", "--param", "tri",
                     "--z", "0.2", "--w", "0.5", "--check-commute", "--json"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["check"] == "commute"
    assert payload["pass"] is True


def test_transfer_sparse_dump(capsys):
    assert main.run(["transfer", "--graph", "A3", "--sites", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "row,col,re,im"
    # M(0) is a permutation: one unit entry per column
    assert len(lines) - 1 == 4
    assert all(line.endswith(",1,0") for line in lines[1:])


def test_chain_spectrum_csv(tmp_path, capsys):
    path = tmp_path / "spectrum.csv"
    assert main.run(["chain", "--graph", "A4", "--sites", "4", "--diagonalize", "--csv", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0] == "index,eigenvalue"
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert values == sorted(values)
    assert "jacobi" in capsys.readouterr().out


def test_chain_without_action_exits_two(capsys):
    assert main.run(["chain", "--graph", "A4", "--sites", "4"]) == 2


@pytest.mark.slow
def test_suite_passes(capsys):
    assert main.run(["suite", "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["pass"] is True
    assert summary["total"] >= 12
    assert summary["errors"] == []


def test_edge_list_graph(capsys):
    assert main.run(["verify", "tl", "--graph", "1-2,2-3,3-1", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["graph"] == "custom"
    assert payload["pass"] is True


def test_edge_file_graph(tmp_path, capsys):
    path = tmp_path / "a4_path.txt"
    path.write_text("# A4 as an edge file\n1 2\n2 3\n\n3 4  # tail\n")
    assert main.run(["verify", "tl", "--graph", str(path), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["graph"] == "a4_path"
    assert payload["pass"] is True


def test_malformed_edge_file_exits_two(tmp_path, capsys):
    path = tmp_path / "broken.txt"
    path.write_text("1 2\n2 three\n")
    assert main.run(["verify", "tl", "--graph", str(path)]) == 2
    assert "broken.txt:2:" in capsys.readouterr().err


def test_hyperbolic_weights_refused_below_two(capsys):
    assert main.run(["verify", "ybe", "--graph", "A5", "--param", "hyp", "--z", "0.3", "--w", "0.7"]) == 2
    err = capsys.readouterr().err
    assert "kappa > 2" in err and "A5" in err


def test_trigonometric_weights_refused_above_two(capsys):
    k4 = "1-2,1-3,1-4,2-3,2-4,3-4"
    assert main.run(["verify", "functional", "--graph", k4, "--param", "tri"]) == 2
    assert "|kappa| < 2" in capsys.readouterr().err


def test_hyperbolic_weights_on_dense_graph(capsys):
    k4 = "1-2,1-3,1-4,2-3,2-4,3-4"
    assert main.run(["verify", "functional", "--graph", k4, "--param", "hyp", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["pass"] is True


def _without_timing(node):
    if isinstance(node, dict):
        return {k: _without_timing(v) for k, v in node.items() if k != "wall_time_ms"}
    if isinstance(node, list):
        return [_without_timing(v) for v in node]
    return node


@pytest.mark.slow
def test_suite_json_is_reproducible(capsys):
    outputs = []
    for _ in range(2):
        assert main.run(["suite", "--json"]) == 0
        outputs.append(json.loads(capsys.readouterr().out))
    assert json.dumps(_without_timing(outputs[0])) == json.dumps(_without_timing(outputs[1]))
