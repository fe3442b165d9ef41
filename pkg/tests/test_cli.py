"""Command-line round trips, exit codes, environment knobs."""

import json

import pytest

import zvsearch.solver as solver_module
from zvsearch.cli import main
from zvsearch.graphs import cycle_graph, parse_edge_list, path_graph
from zvsearch.solver import is_path_decomposition

GOLDEN_STEPS = """\
A I1 I2
A I2 I3
A I3 I4
A I4 D
A B C
B C D
D I3 I4
# the last window mops up what eroded while B and C were handled
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_gen_round_trip(capsys):
    code, out, err = run(capsys, "gen", "cycle:5")
    assert code == 0 and err == ""
    g, terminals = parse_edge_list(out)
    assert g == cycle_graph(5) and terminals is None


def test_gen_bad_spec(capsys):
    code, _, err = run(capsys, "gen", "dodecahedron:12")
    assert code == 1 and err.startswith("error:")


def test_solve_cycle(capsys):
    doc = run_json(capsys, "solve", "cycle:5")
    assert doc["value"] == 3
    assert len(doc["witness"]) >= 1
    assert doc["method"]


def test_solve_k_max_gives_up(capsys):
    doc = run_json(capsys, "solve", "complete:5", "--k-max", "3")
    assert doc["value"] is None and doc["witness"] is None


def test_solve_reads_files(capsys, tmp_path):
    f = tmp_path / "p4.txt"
    code, out, _ = run(capsys, "gen", "path:4")
    assert code == 0
    f.write_text(out)
    doc = run_json(capsys, "solve", str(f))
    assert doc["value"] == 2


def test_solve_unknown_source(capsys):
    code, _, err = run(capsys, "solve", "nosuchfile.txt")
    assert code == 1 and "neither a file nor a generator spec" in err


def test_solve_workers_note(capsys):
    code, out, err = run(capsys, "solve", "path:3", "--workers", "2")
    assert code == 0
    assert "single-threaded" in err
    assert json.loads(out)["value"] == 2


def test_pathwidth_grid(capsys):
    doc = run_json(capsys, "pathwidth", "grid:3,3")
    assert doc["value"] == 3
    from zvsearch.graphs import grid_graph

    bags = [frozenset(b) for b in doc["bags"]]
    assert is_path_decomposition(grid_graph(3, 3), bags)


def test_mono_strict_gap(capsys):
    assert run_json(capsys, "mono", "k4sub")["value"] == 4
    assert run_json(capsys, "solve", "k4sub")["value"] == 3


def test_classify_yes(capsys):
    doc = run_json(capsys, "classify", "cycle:4")
    assert doc["verdict"] == "YES"
    assert "tree" in doc and "family" not in doc


def test_classify_no(capsys):
    doc = run_json(capsys, "classify", "complete:4")
    assert doc["verdict"] == "NO"
    assert doc["family"] == "F1"
    assert doc["witness"]["family"] == "F1"


def test_verify_search_file(capsys, tmp_path):
    f = tmp_path / "steps.txt"
    f.write_text(GOLDEN_STEPS)
    doc = run_json(capsys, "verify", "k4sub", "--search", str(f))
    assert doc == {"successful": True, "monotonic": False, "width": 3, "length": 7}


def test_verify_clean_start(capsys, tmp_path):
    f = tmp_path / "steps.txt"
    f.write_text("1 2\n")
    doc = run_json(capsys, "verify", "path:3", "--search", str(f), "--clean-start", "0,1")
    assert doc["successful"] is True


def test_verify_argument_conflicts(capsys, tmp_path):
    f = tmp_path / "b.json"
    f.write_text("{}")
    code, _, err = run(capsys, "verify", "cycle:4", "--bundle", str(f))
    assert code == 1 and "--bundle replaces" in err
    code, _, err = run(capsys, "verify", "cycle:4")
    assert code == 1 and "verify needs" in err


def test_synth_verify_round_trip(capsys, tmp_path):
    bundle = run_json(capsys, "synth", "cycle:4")
    f = tmp_path / "bundle.json"
    f.write_text(json.dumps(bundle))
    doc = run_json(capsys, "verify", "--bundle", str(f))
    assert doc["successful"] is True
    assert doc["aligned"] is True
    assert doc["width"] <= 3
    assert doc["length"] == bundle["stats"]["search_length"]


def test_synth_rejected_graph_reports_family(capsys):
    doc = run_json(capsys, "synth", "complete:4")
    assert doc["verdict"] == "NO" and doc["family"] == "F1"


def test_synth_floor_flag(capsys):
    bundle = run_json(capsys, "synth", "cycle:4", "--floor", "0", "1", "5")
    counts = {(u, v): c for u, v, c in bundle["counts"]}
    assert counts[("0", "1")] >= 5


def test_synth_floor_must_be_integer(capsys):
    code, _, err = run(capsys, "synth", "cycle:4", "--floor", "0", "1", "many")
    assert code == 1 and "integer" in err


def test_lowerbound_certificate(capsys):
    doc = run_json(capsys, "lowerbound", "cycle:6", "-k", "2")
    assert doc == {
        "k": 2,
        "profile": [0, 1, 6],
        "certificate": {"k": 2, "i": 3, "profile": [0, 1, 6]},
    }


def test_lowerbound_no_gap(capsys):
    doc = run_json(capsys, "lowerbound", "path:4", "-k", "2")
    assert doc["certificate"] is None
    assert doc["profile"] == [0, 1, 2, 3, 4]


def test_state_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("ZVSEARCH_STATE_BUDGET", "2")
    code, _, err = run(capsys, "solve", "grid:3,3")
    assert code == 2 and err.startswith("resource limit:")

    monkeypatch.setenv("ZVSEARCH_STATE_BUDGET", "lots")
    code, _, err = run(capsys, "solve", "path:3")
    assert code == 1 and "must be an integer" in err


def test_subset_budget_env(capsys, monkeypatch):
    monkeypatch.setattr(solver_module, "_MASK_CAP", solver_module._MASK_CAP)
    monkeypatch.setenv("ZVSEARCH_SUBSET_BUDGET", "3")
    code, _, err = run(capsys, "lowerbound", "cycle:6", "-k", "2")
    assert code == 2 and "subset tables" in err


def test_flag_validation(capsys):
    code, _, err = run(capsys, "solve", "path:3", "--budget", "0")
    assert code == 1 and "--budget" in err
    code, _, err = run(capsys, "solve", "path:3", "--k-max", "0")
    assert code == 1 and "--k-max" in err
    code, _, err = run(capsys, "lowerbound", "path:3", "-k", "-1")
    assert code == 1 and "-k" in err


@pytest.mark.parametrize("argv", [("solve", "cycle:5"), ("classify", "k4sub")])
def test_output_is_deterministic(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
