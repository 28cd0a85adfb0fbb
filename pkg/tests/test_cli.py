import json

import pytest

from cycleramsey.cli import run
from cycleramsey.graphs import dump_graph, load_coloring
from cycleramsey.graphs import Graph


@pytest.fixture
def c6_file(tmp_path):
    path = tmp_path / "c6.json"
    path.write_text(dump_graph(Graph(6, [(i, (i + 1) % 6) for i in range(6)])))
    return str(path)


def test_construct_verify_roundtrip(tmp_path, capsys):
    coloring = tmp_path / "c.json"
    report = tmp_path / "r.json"
    code = run([
        "construct", "--odd-triple", "5", "--coloring-out", str(coloring),
        "--format", "json", "--out", str(report),
    ])
    assert code == 0
    data = json.loads(report.read_text())
    assert data["construction"]["n"] == 16
    assert all(c["verified"] for c in data["construction"]["claims"])
    loaded = load_coloring(coloring.read_text())
    assert loaded.n == 16

    code = run([
        "verify", "--coloring", str(coloring), "--report", str(report),
        "--format", "json",
    ])
    captured = capsys.readouterr()
    assert code == 0
    redone = json.loads(captured.out)
    assert all(c["verified"] for c in redone["construction"]["claims"])


def test_bound_prints_coefficient(capsys):
    assert run(["bound", "--parities", "eeo", "--alphas", "1,1,1"]) == 0
    out = capsys.readouterr().out
    assert "exact: 3" in out


def test_bound_usage_error(capsys):
    assert run(["bound"]) == 1


def test_search_exit_codes(capsys):
    assert run(["search", "--targets", "C3:1,C3:2", "--n", "6"]) == 0
    out = capsys.readouterr().out
    assert "arrows: True" in out
    # unknown (budget exhausted) exits 2
    code = run([
        "search", "--targets", "C3:1,C3:2,C3:3", "--n", "11",
        "--node-budget", "50",
    ])
    assert code == 2


def test_search_instance_file(tmp_path, capsys):
    inst = {
        "n": 5,
        "holes": [],
        "deleted_budget": 0,
        "targets": [
            {"kind": "cycle", "length": 3, "exact": True},
            {"kind": "cycle", "length": 3, "exact": True},
        ],
    }
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(inst))
    code = run(["search", "--instance", str(path), "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"]["arrows"] is False
    witness = data["verdict"]["witness"]
    assert witness["n"] == 5 and len(witness["edges"]) == 10


def test_search_range(capsys):
    code = run([
        "search", "--targets", "C3:1,C3:2", "--range", "3..7", "--format", "json",
    ])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["ramsey"]["value"] == 6


def test_cycles_and_matching_commands(c6_file, capsys):
    assert run(["cycles", "--graph", c6_file, "--length", "6"]) == 0
    assert "found: True" in capsys.readouterr().out
    assert run(["cycles", "--graph", c6_file, "--length", "5"]) == 0
    assert "found: False" in capsys.readouterr().out
    assert run(["matching", "--graph", c6_file, "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["saturation"] == 6


def test_decompose_commands(tmp_path, capsys):
    star = tmp_path / "star.json"
    star.write_text(dump_graph(Graph(6, [(0, i) for i in range(1, 6)])))
    assert run([
        "decompose", "--graph", str(star), "--n-target", "3", "--format", "json",
    ]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["tutte_partition"]["S"] == [0]
    assert data["tutte_partition"]["verified"] is True

    tri = tmp_path / "tri.json"
    tri.write_text(dump_graph(Graph(3, [(0, 1), (1, 2), (0, 2)])))
    assert run([
        "decompose", "--graph", str(tri), "--alpha", "3", "--format", "json",
    ]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["bipartite_split"]["Vdoubleprime"] == [0, 1, 2]


def test_lemma_command(capsys):
    code = run([
        "lemma", "--id", "dwa", "--alpha", "1", "--beta", "1", "--nu", "0",
        "--eps", "1/256", "--n", "10", "--samples", "4", "--format", "json",
    ])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["harness"]["passes"] == 4
    assert data["harness"]["failures"] == []


def test_cli_reports_are_deterministic(capsys):
    def grab(extra):
        code = run([
            "search", "--targets", "C3:1,C3:2", "--n", "5", "--mode",
            "randomized", "--format", "json", "--seed", "99", *extra,
        ])
        assert code == 0
        return capsys.readouterr().out

    first = grab(["--threads", "1"])
    second = grab(["--threads", "8"])
    pruned = [json.loads(first), json.loads(second)]
    for payload in pruned:
        payload["meta"].pop("config_hash")  # differs: threads is in the config
        payload["meta"].pop("threads")
    assert pruned[0] == pruned[1]


def test_usage_errors(capsys):
    assert run(["construct"]) == 1
    assert run(["cycles", "--graph", "/nonexistent.json"]) == 1
    assert run(["search"]) == 1
    assert run(["nonsense"]) == 1


def test_search_tau_and_randomized_modes(capsys):
    code = run(["search", "--targets", "M4:1,M4:2", "--n", "4", "--mode", "tau",
                "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"]["arrows"] is False
    assert data["verdict"]["header"]["mode"] == "tau"

    code = run(["search", "--targets", "C3:1,C3:2", "--n", "5", "--mode",
                "randomized", "--format", "json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdict"]["arrows"] is False

    # randomized search on an arrowing instance stays unknown: exit 2
    code = run(["search", "--targets", "C3:1,C3:2", "--n", "6", "--mode",
                "randomized", "--steps", "400", "--restarts", "1"])
    assert code == 2


def test_out_file_and_csv(tmp_path, capsys):
    out = tmp_path / "bound.csv"
    code = run(["bound", "--xi", "1,1,0", "--format", "csv", "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert text.startswith("key,value")
    assert "xi.exact,2" in text
    assert capsys.readouterr().out == ""


def test_verify_rejects_invalid_coloring(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "k": 2, "holes": [], "deleted": [], '
                   '"edges": [[0, 1, 1]]}')
    assert run(["verify", "--coloring", str(bad)]) == 1


def test_timings_flag_controls_volatile_fields(capsys):
    run(["search", "--targets", "C3:1,C3:2", "--n", "5", "--format", "json"])
    plain = json.loads(capsys.readouterr().out)
    assert "elapsed_seconds" not in plain["verdict"]["stats"]
    run(["search", "--targets", "C3:1,C3:2", "--n", "5", "--format", "json",
         "--timings"])
    timed = json.loads(capsys.readouterr().out)
    assert "elapsed_seconds" in timed["verdict"]["stats"]
