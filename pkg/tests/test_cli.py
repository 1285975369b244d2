"""CLI tests: subcommand behavior, exit codes, deterministic output."""

import json

import pytest

from clusterkit.cli import main


@pytest.fixture
def capout(capsys):
    def run(argv):
        code = main(argv)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run


def write_json(path, payload):
    path.write_text(json.dumps(payload))
    return str(path)


A2_QUIVER_JSON = {"n": 2, "m": 2, "arrows": [[1, 2, 1]]}


def test_mutate_quiver_round_trip(tmp_path, capout):
    f = write_json(tmp_path / "q.json", A2_QUIVER_JSON)
    code, out, _ = capout(["mutate", "--quiver", f, "--path", "1 1"])
    assert code == 0
    assert json.loads(out)["quiver"] == A2_QUIVER_JSON


def test_mutate_seed_involution(tmp_path, capout):
    seed_json = {"cluster": ["x1", "x2"], "matrix": [[0, 1], [-1, 0]]}
    f = write_json(tmp_path / "s.json", seed_json)
    code, out, _ = capout(["mutate", "--seed", f, "--path", "1 1"])
    assert code == 0
    got = json.loads(out)["seed"]
    assert got["cluster"] == ["x1", "x2"]
    assert got["matrix"] == [[0, 1], [-1, 0]]


def test_mutate_frozen_vertex_exit_code(tmp_path, capout):
    f = write_json(tmp_path / "q.json", {"n": 1, "m": 2, "arrows": [[1, 2, 1]]})
    code, _, err = capout(["mutate", "--quiver", f, "--path", "2"])
    assert code == 4
    assert "frozen" in err


def test_mutate_bad_json_exit_code(tmp_path, capout):
    f = tmp_path / "bad.json"
    f.write_text("{nope")
    code, _, err = capout(["mutate", "--quiver", str(f), "--path", "1"])
    assert code == 2


def test_explore_a3_counts(tmp_path, capout):
    f = write_json(
        tmp_path / "a3.json", {"n": 3, "m": 3, "arrows": [[1, 2, 1], [2, 3, 1]]}
    )
    code, out, _ = capout(["explore", "--quiver", f, "--budget", "100"])
    assert code == 0
    payload = json.loads(out)
    assert payload["vertices"] == 14 and payload["edges"] == 21
    assert payload["exceeded"] is False


def test_explore_budget_exceeded_exit_code(tmp_path, capout):
    f = write_json(
        tmp_path / "a3.json", {"n": 3, "m": 3, "arrows": [[1, 2, 1], [2, 3, 1]]}
    )
    code, out, _ = capout(["explore", "--quiver", f, "--budget", "3"])
    assert code == 3
    assert json.loads(out)["exceeded"] is True


def test_finite_type_matrix(tmp_path, capout):
    f = write_json(tmp_path / "b.json", [[0, 1], [-1, 0]])
    code, out, _ = capout(["finite-type", "--matrix", f])
    assert code == 0
    assert json.loads(out)["type"] == "A2"


def test_laurent_verify(tmp_path, capout):
    f = write_json(tmp_path / "q.json", A2_QUIVER_JSON)
    code, out, _ = capout(["laurent-verify", "--quiver", f, "--path", "1 2 1 2 1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["all_laurent"] and payload["all_positive_coefficients"]
    assert payload["checked"] == 5


def test_y_period_a2_trace(capout):
    code, out, _ = capout(["y-period", "--dynkin", "A2", "--trace"])
    assert code == 0
    payload = json.loads(out)
    assert payload["period"] == 10 and payload["bound"] == 10
    assert payload["phi_order"] == 5
    assert payload["trace"][1] == [1, ["1/u1", "u1*u2 + u2"]]
    assert payload["trace"][5][1] == ["u2", "u1"]


def test_y_period_pair_with_pattern(capout):
    code, out, _ = capout(
        ["y-period", "--dynkin", "A2", "--pair", "A2", "--check-pattern"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["period"] == 12 and payload["divides_bound"] is True
    assert payload["pattern"]["period"] == payload["phi_order"] == 6


def test_y_period_budget_exit(capout):
    code, out, _ = capout(["y-period", "--dynkin", "A3", "--max-steps", "4"])
    assert code == 3
    assert json.loads(out)["period"] is None


def test_output_is_byte_deterministic(tmp_path, capout):
    f = write_json(tmp_path / "q.json", A2_QUIVER_JSON)
    _, out1, _ = capout(["explore", "--quiver", f])
    _, out2, _ = capout(["explore", "--quiver", f])
    assert out1 == out2


def test_polygon_flip_graph(capout):
    code, out, _ = capout(["polygon", "flip-graph", "--d", "6"])
    assert code == 0
    payload = json.loads(out)
    assert payload["triangulations"] == 14 == payload["catalan"]
    assert payload["connected"] is True


def test_polygon_plucker_check(capout):
    code, out, _ = capout(["polygon", "plucker-check", "--d", "5"])
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_polygon_flip_is_mutation(capout):
    code, out, _ = capout(["polygon", "flip-is-mutation", "--d", "6"])
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True and payload["triangulations"] == 14


def test_mutation_class_command(tmp_path, capout):
    f = write_json(tmp_path / "b.json", [[0, 2], [-2, 0]])
    code, out, _ = capout(["mutation-class", "--matrix", f, "--full"])
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] <= 2 and not payload["exceeded"]


def test_report_dir_writes_figures(tmp_path, capout):
    code, _, _ = capout(
        ["y-period", "--dynkin", "A2", "--report-dir", str(tmp_path / "rep")]
    )
    assert code == 0
    assert (tmp_path / "rep" / "y_trace.csv").exists()
    assert (tmp_path / "rep" / "y_trace.png").exists()
    lines = (tmp_path / "rep" / "y_trace.csv").read_text().splitlines()
    assert lines[0] == "t,1,2"
    assert lines[1] == "0,u1,u2"


def test_env_budget_override(tmp_path, capout, monkeypatch):
    f = write_json(
        tmp_path / "a3.json", {"n": 3, "m": 3, "arrows": [[1, 2, 1], [2, 3, 1]]}
    )
    monkeypatch.setenv("CLUSTERKIT_BUDGET_EXCHANGE", "3")
    code, out, _ = capout(["explore", "--quiver", f])
    assert code == 3 and json.loads(out)["exceeded"] is True
