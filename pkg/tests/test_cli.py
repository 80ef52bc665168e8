import json

import pytest

from cogen import __version__
from cogen.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = call(capsys, *argv)
    return code, json.loads(out), err


def test_verify_maximal(capsys):
    code, rep, err = report(capsys, "verify", "--n", "7", "--k", "5", "--group", "sym")
    assert code == 0 and rep["result"]["status"] == "maximal"
    assert rep["version"] == __version__ and rep["config"]["n"] == 7 and "wall_time" in rep
    assert "maximal" in err


def test_verify_not_maximal(capsys):
    code, rep, _ = report(capsys, "verify", "--n", "6", "--k", "4")
    assert code == 0 and rep["result"]["status"] == "not-maximal"
    assert rep["result"]["coclique_report"]["extender"] == "(1,5)"


def test_verify_beyond_sweep(capsys):
    code, rep, _ = report(capsys, "verify", "--n", "20", "--k", "12", "--group", "alt")
    assert code == 0 and rep["result"]["computed"] is False


def test_closure_6_4(capsys):
    code, rep, _ = report(capsys, "closure", "--n", "6", "--k", "4", "--group", "sym", "--elements")
    assert code == 0
    assert rep["result"]["size"] == 55 and len(rep["result"]["elements"]) == 55


def test_witness(capsys):
    code, rep, err = report(capsys, "witness", "--n", "13", "--k", "7", "--group", "alt", "--x", "(1,8)(2,9)")
    assert code == 0 and rep["result"]["outcome"] == "Witness" and rep["result"]["verified"]
    assert rep["result"]["order_of_pair"] == 3113510400
    code, rep, _ = report(capsys, "witness", "--n", "6", "--k", "4", "--x", "(1,5)")
    assert code == 0 and rep["result"]["outcome"] == "NoWitness" and rep["result"]["expected_no_witness"]


def test_reproduce(capsys):
    code, rep, _ = report(capsys, "reproduce-3-2", "--max-n", "9", "--no-timing")
    assert code == 0 and rep["result"]["match"] and len(rep["result"]["survivors"]) == 6


def test_determinism_across_jobs(capsys):
    _, a, _ = call(capsys, "reproduce-3-2", "--max-n", "8", "--no-timing", "--jobs", "1")
    _, b, _ = call(capsys, "reproduce-3-2", "--max-n", "8", "--no-timing", "--jobs", "3")
    assert a == b and "wall_time" not in a


def test_graph_formats(capsys):
    code, out, _ = call(capsys, "graph", "--n", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "u,v" and len(out.splitlines()) == 10
    code, out, _ = call(capsys, "graph", "--n", "3", "--format", "dot")
    assert out.startswith("graph Gamma_sym3 {")
    code, rep, _ = report(capsys, "graph", "--n", "4", "--group", "alt")
    assert rep["result"]["edge_count"] == len(rep["result"]["edges"])


def test_primes_small(capsys):
    code, rep, _ = report(capsys, "primes", "--k-max", "300", "--p1-k-max", "60", "--n-max", "300")
    assert code == 0 and rep["result"]["failure_count"] == 0
    assert rep["result"]["counts"]["prime_p2_inequality"] > 0


def test_agl_and_prime_degree(capsys):
    code, rep, _ = report(capsys, "agl", "--p", "7")
    assert code == 0 and rep["result"]["order"] == 42
    code, rep, _ = report(capsys, "prime-degree", "--p", "5", "--group", "alt")
    assert code == 0 and rep["result"]["exceptions"] == ["(S_3 x S_2) ∩ G"]


def test_out_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = call(capsys, "agl", "--p", "5", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["result"]["p"] == 5


@pytest.mark.parametrize("argv", [
    ["verify", "--n", "6", "--k", "3"],
    ["verify", "--n", "6"],
    ["witness", "--n", "12", "--k", "7"],
    ["witness", "--n", "12", "--k", "7", "--x", "(1,2"],
    ["agl"],
    ["prime-degree", "--p", "11"],
    ["verify", "--n", "7", "--k", "5", "--budget", "0"],
    ["nonsense"],
])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(run(argv))
    assert exc.value.code == 1
    assert capsys.readouterr().err


def test_budget_exhaustion_is_a_mismatch(capsys):
    code, rep, _ = report(capsys, "witness", "--n", "4", "--k", "3", "--x", "(1,4)(2,3)", "--budget", "1")
    assert code == 2 and rep["status"] == "mismatch" and rep["error"]


def test_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("COGEN_BUDGET", "1")
    code, _, _ = call(capsys, "witness", "--n", "4", "--k", "3", "--x", "(1,4)(2,3)")
    assert code == 2
