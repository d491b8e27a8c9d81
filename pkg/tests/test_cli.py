import json
import subprocess
import sys

import pytest

from matchpoly.cli import EXIT_BUDGET, EXIT_FAILED, EXIT_INVALID, EXIT_OK, run


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "edge": write(tmp_path, "edge.json", {"type": "multigraph", "n": 2, "edges": [[0, 1]]}),
        "b1": write(tmp_path, "b1.json", {"type": "multigraph", "n": 1, "edges": [[0, 0]]}),
        "k3": write(tmp_path, "k3.json", {"type": "multigraph", "n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}),
        "fig": write(tmp_path, "fig.json",
                     {"type": "multigraph", "n": 4, "edges": [[0, 1], [0, 2], [1, 2], [2, 3], [3, 3]]}),
        "k4": write(tmp_path, "k4.json", {"type": "multigraph", "n": 4,
                                          "edges": [[i, j] for i in range(4) for j in range(i + 1, 4)]}),
        "c6": write(tmp_path, "c6.json", {"type": "multigraph", "n": 6,
                                          "edges": [[i, (i + 1) % 6] for i in range(6)]}),
        "hyper": write(tmp_path, "h.json", {"type": "hypergraph", "n": 3, "edges": [[0, 1, 2]]}),
        "kap": write(tmp_path, "k.json", {"type": "hypergraph", "n": 2, "edges": [[0, 1]]}),
        "dist": write(tmp_path, "d.json", {"n": 2, "support": [
            {"set": [0, 1], "num": "2", "den": "5"}, {"set": [0], "num": "1", "den": "10"},
            {"set": [1], "num": "1", "den": "10"}, {"set": [], "num": "2", "den": "5"}]}),
        "z4": write(tmp_path, "z4.json", {"perm_gens": [[1, 2, 3, 0]]}),
        "text": write(tmp_path, "edge.txt", "2\n0 1\n"),
        "bad": write(tmp_path, "bad.json", "{not json"),
        "oob": write(tmp_path, "oob.json", {"type": "multigraph", "n": 2, "edges": [[0, 5]]}),
    }


def invoke(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_matching_example(capsys, files):
    code, out, _ = invoke(capsys, "matching", "--graph", files["edge"], "--univariate")
    assert code == EXIT_OK and out == '{"poly":"x^2 - 1"}\n'
    code, out, _ = invoke(capsys, "matching", "--graph", files["text"], "--univariate", "--format", "text")
    assert out == "x^2 - 1\n"
    code, out, _ = invoke(capsys, "matching", "--graph", files["edge"])
    assert json.loads(out)["text"] == "x0*x1 - 1"


def test_dmatch_example(capsys, files):
    code, out, _ = invoke(capsys, "dmatch", "--graph", files["b1"], "--d", "2")
    assert code == EXIT_OK and json.loads(out)["poly"] == "x^2 - 1"
    code, out, _ = invoke(capsys, "dmatch", "--graph", files["fig"], "--d", "2", "--workers", "2",
                          "--format", "text")
    assert code == EXIT_OK and out == "x^8 - 9*x^6 + 24*x^4 - 18*x^2 + 2\n"


def test_gg_hps_and_cayley(capsys, files):
    code, out, _ = invoke(capsys, "gg", "--graph", files["k3"])
    payload = json.loads(out)
    assert code == EXIT_OK and payload["equal"] and payload["expected_charpoly"] == "x^3 - 3*x"
    code, out, _ = invoke(capsys, "hps-check", "--graph", files["b1"], "--d", "2")
    assert code == EXIT_OK and json.loads(out)["passed"]
    code, out, _ = invoke(capsys, "cayley", "--group", files["z4"])
    A = json.loads(out)["adjacency"]
    assert code == EXIT_OK and all(sum(row) == 2 for row in A) and len(A) == 4


def test_distribution_commands(capsys, files):
    code, out, _ = invoke(capsys, "induced", "--graph", files["edge"], "--dist", files["dist"])
    assert code == EXIT_OK and json.loads(out)["text"] == "2/5*x0*x1 + 1/10*x0 + 1/10*x1"
    code, out, _ = invoke(capsys, "rayleigh", "--dist", files["dist"], "--trials", "200", "--seed", "7")
    assert code == EXIT_OK and json.loads(out)["status"] == "refuted"


def test_rho_example(capsys, files):
    code, out, _ = invoke(capsys, "rho", "--graph", files["c6"], "--depth", "12")
    payload = json.loads(out)
    assert code == EXIT_OK and payload["depth"] == 12
    num, den = map(int, payload["lower_bound"].split("/"))
    assert 1.9 < num / den < 2


def test_hypergraph_commands(capsys, files):
    code, out, _ = invoke(capsys, "relaxed", "--hypergraph", files["hyper"], "--format", "text")
    assert out == "x0*x1*x2 - x0 - x1 - x2 - 2\n"
    code, out, _ = invoke(capsys, "relaxed", "--hypergraph", files["kap"], "--kappa", "2,1", "--via", "operator",
                          "--format", "text")
    assert out == "x0^2*x1 - 2*x0\n"
    code, out, _ = invoke(capsys, "relaxed", "--hypergraph", files["hyper"], "--univariate")
    assert json.loads(out) == {"poly": "x^3 - 3*x - 2"}
    code, out, _ = invoke(capsys, "identities", "--hypergraph", files["hyper"])
    assert code == EXIT_OK and json.loads(out)["ok"]


def test_verify_suite(capsys):
    code, out, _ = invoke(capsys, "verify", "--suite", "gg", "--format", "text")
    assert code == EXIT_OK and out.startswith("[PASS] criterion 1")
    code, out, _ = invoke(capsys, "verify", "--suite", "identities")
    assert code == EXIT_OK and json.loads(out)["passed"]


@pytest.mark.parametrize("argv", [
    ["nosuch"],
    ["matching"],
    ["matching", "--graph", "/nonexistent.json"],
    ["dmatch", "--graph", "{edge}", "--d", "0"],
    ["rho", "--graph", "{edge}", "--depth", "-1"],
    ["matching", "--graph", "{bad}"],
    ["matching", "--graph", "{oob}"],
    ["relaxed", "--hypergraph", "{hyper}", "--kappa", "1,1"],
    ["verify", "--suite", "nope"],
    ["matching", "--graph", "{edge}", "--matched", "--univariate"],
    ["gg", "--graph", "{b1}"],
])
def test_invalid_inputs_exit_two_with_one_line(capsys, files, argv):
    argv = [a.format(**files) for a in argv]
    code, out, err = invoke(capsys, *argv)
    assert code == EXIT_INVALID and out == ""
    assert err.startswith("error: invalid: ") and err.count("\n") == 1


def test_budget_refusal(capsys, files, monkeypatch):
    # gauge fixing leaves 24^2 labelings to enumerate
    code, _, err = invoke(capsys, "dmatch", "--graph", files["fig"], "--d", "4", "--budget", "575")
    assert code == EXIT_BUDGET and err.startswith("error: budget: ")
    monkeypatch.setenv("MATCHPOLY_BUDGET", "7")
    code, _, err = invoke(capsys, "gg", "--graph", files["k3"])
    assert code == EXIT_BUDGET
    code, _, err = invoke(capsys, "rho", "--graph", files["k4"], "--depth", "40")
    assert code == EXIT_BUDGET


def test_failed_check_exit_code():
    assert EXIT_FAILED == 1


def test_output_is_byte_deterministic(capsys, files):
    argv = ["rayleigh", "--dist", files["dist"], "--seed", "3"]
    assert invoke(capsys, *argv) == invoke(capsys, *argv)
    argv = ["dmatch", "--graph", files["k3"], "--d", "3", "--multivariate"]
    assert invoke(capsys, *argv) == invoke(capsys, *argv)


def test_help_and_module_entry_point(files):
    with pytest.raises(SystemExit) as info:
        run(["--help"])
    assert info.value.code == 0
    proc = subprocess.run([sys.executable, "-m", "matchpoly", "matching", "--graph", files["edge"], "--univariate"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == '{"poly":"x^2 - 1"}\n'
