import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from ddx.cli import SUBCOMMANDS, main


def schema(name):
    return json.loads(resources.files("ddx").joinpath("schemas", f"{name}.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    assert out.count("\n") == 1
    doc = json.loads(out)
    jsonschema.validate(doc, schema(argv[0]))
    return doc


INVOCATIONS = {
    "findiff": ["--seq", "poly:0,0,1", "--N", "4"],
    "divdiff": ["--seq", "poly:0,0,0,1", "--tuple", "0,2,5,7"],
    "newton": ["--seq", "exp:2", "--nodes", "0,1,3"],
    "tau": ["--p", "2", "--m", "2", "--n", "10"],
    "tau-table": ["--p", "2,3,5", "--m", "3", "--n-max", "12", "--format", "json"],
    "theta": ["--n", "100"],
    "primesum": ["--n", "1000", "--m", "2"],
    "converge": ["--m", "1", "--checkpoints", "10,100,1000", "--format", "json"],
    "mahler": ["--seq", "poly:0,1,1/2", "--N", "6", "--m", "2"],
    "norm": ["--seq", "poly:0,1/6,0,1/3", "--N", "9", "--m", "1", "--p", "3"],
    "integrality": ["--seq", "poly:0,-1/2,1/2", "--N", "10", "--m", "2"],
    "clear-const": ["--seq", "binom:0,0,1", "--N", "6", "--m", "2"],
    "threshold": ["--m", "1", "--place", "arch:9", "--place", "T:2:2"],
    "hall-ruzsa": ["--seq", "exp:2", "--N", "15", "--m", "1"],
    "extremal": ["--m", "1", "--N", "8", "--format", "json"],
    "local-approx": ["--seq", "poly:0,2,-3,1", "--N", "12", "--m", "2", "--n0", "1", "--eps", "3"],
    "lipschitz": ["--seq", "poly:0,2,-3,1", "--N", "12", "--m", "2", "--p", "2", "--samples", "300", "--seed", "5"],
}


def test_every_subcommand_covered():
    assert set(INVOCATIONS) == set(SUBCOMMANDS)


@pytest.mark.parametrize("cmd", SUBCOMMANDS)
def test_output_matches_schema(capsys, cmd):
    run_json(capsys, cmd, *INVOCATIONS[cmd])


def test_mahler_point_mode(capsys):
    doc = run_json(capsys, "mahler", "--seq", "poly:0,0,0,1", "--N", "10", "--m", "2", "--at", "1,0,2")
    assert doc["tuple"] == [2, 3, 5]
    assert doc["value"] == doc["divided_difference"] == "10"


def test_tau_example(capsys):
    assert run_json(capsys, "tau", "--p", "2", "--m", "2", "--n", "10") == {"tau": 5, "method": "explicit"}
    assert run_json(capsys, "tau", "--p", "2", "--m", "3", "--n", "10")["method"] == "greedy"
    brute = run_json(capsys, "tau", "--p", "2", "--m", "3", "--n", "4", "--method", "brute")
    assert brute["tau"] == 3


def test_findiff_example(capsys):
    doc = run_json(capsys, "findiff", "--seq", "poly:0,0,1", "--N", "4")
    assert doc["c"] == ["0", "1", "2", "0", "0"]


def test_theta_example(capsys):
    assert run_json(capsys, "theta", "--n", "1")["theta"] == 0.0
    assert run_json(capsys, "theta", "--n", "10")["theta"] == pytest.approx(5.347107530717468)


def test_examples_through_cli(capsys):
    assert run_json(capsys, "clear-const", *INVOCATIONS["clear-const"])["C"] == 2
    doc = run_json(capsys, "threshold", *INVOCATIONS["threshold"])
    assert doc["lhs"] == 2.5 and doc["satisfied"]
    doc = run_json(capsys, "hall-ruzsa", *INVOCATIONS["hall-ruzsa"])
    assert doc["verdict"] == "hypothesis-violation" and "growth" in doc["violated"]
    doc = run_json(capsys, "local-approx", *INVOCATIONS["local-approx"])
    assert doc["gcd"] == ["24", "24"] and doc["verdict"] == "pass"
    doc = run_json(capsys, "integrality", *INVOCATIONS["integrality"])
    assert doc["verdict"] == "not-integral" and doc["failing"] == [2]
    doc = run_json(capsys, "integrality", "--seq", "poly:0,0,1", "--N", "10", "--m", "1")
    assert doc["verdict"] == "prefix-integral"
    doc = run_json(capsys, "norm", *INVOCATIONS["norm"])
    assert doc["equal"] and doc["lhs"]["exponent"] == doc["rhs"]["exponent"] == 1


def test_csv_defaults(capsys):
    code, out, _ = run(capsys, "tau-table", "--p", "2", "--m", "2", "--n-max", "4")
    assert code == 0
    assert out.splitlines() == ["p,m,n,tau,method", "2,2,2,1,explicit", "2,2,3,1,explicit", "2,2,4,3,explicit"]
    code, out, _ = run(capsys, "converge", "--m", "1", "--checkpoints", "10")
    assert out.splitlines()[0] == "n,m,sum,target,ratio,abs_err"
    code, out, _ = run(capsys, "findiff", "--seq", "poly:0,1", "--N", "2", "--format", "csv")
    assert out == "n,c\n0,0\n1,1\n2,0\n"


def test_file_sequence(capsys, tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("# squares\n0\n1\n\n4\n9\n16  # last\n")
    doc = run_json(capsys, "findiff", "--seq", f"file:{path}")
    assert doc["c"] == ["0", "1", "2", "0", "0"]
    code, _, err = run(capsys, "findiff", "--seq", f"file:{path}", "--N", "9")
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["tau", "--p", "4", "--m", "1", "--n", "3"],
        ["tau", "--p", "2", "--m", "3", "--n", "9", "--method", "explicit"],
        ["integrality", "--seq", "poly:1", "--N", "1", "--m", "3"],
        ["local-approx", "--seq", "poly:0,-1/2,1/2", "--N", "10", "--m", "2", "--n0", "0", "--eps", "2"],
        ["lipschitz", "--seq", "poly:0,1", "--N", "5", "--m", "1", "--p", "2"],
        ["hall-ruzsa", "--seq", "poly:1", "--N", "5", "--m", "1"],
        ["primesum", "--n", "0", "--m", "1"],
        ["findiff", "--seq", "file:/nonexistent/path"],
        ["mahler", "--seq", "poly:1", "--N", "3", "--m", "1", "--at", "2,2"],
    ],
)
def test_domain_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    assert err.count("\n") == 1
    doc = json.loads(err)
    jsonschema.validate(doc, schema("error"))
    assert doc["command"] == argv[0]


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["tau", "--p", "2", "--m", "1"],
        ["tau", "--p", "2", "--m", "-1", "--n", "3"],
        ["findiff", "--seq", "poly:0,1"],
        ["findiff", "--seq", "wat:1", "--N", "2"],
        ["theta", "--n", "5", "--format", "csv"],
        ["threshold", "--m", "1", "--place", "T:2:1"],
        ["threshold", "--m", "1", "--place", "Q:1"],
        ["tau", "--p", "2", "--m", "1", "--n", "3", "--threads", "0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert "usage:" in err or "error" in err


def test_byte_identical_across_threads(capsys):
    argv = ["converge", "--m", "2", "--checkpoints", "1000,50000,300000"]
    outs = {run(capsys, *argv, "--threads", str(t))[1] for t in (1, 2, 4, 7)}
    assert len(outs) == 1
    argv = ["primesum", "--n", "200000", "--m", "3"]
    outs = {run(capsys, *argv, "--threads", str(t))[1] for t in (1, 3, 8)}
    assert len(outs) == 1
    argv = ["lipschitz", "--seq", "extremal:2", "--N", "14", "--m", "2", "--p", "3", "--samples", "200", "--seed", "11"]
    outs = {run(capsys, *argv, "--threads", str(t))[1] for t in (1, 4)}
    assert len(outs) == 1


def test_threads_env_default(monkeypatch, capsys):
    base = run(capsys, "theta", "--n", "100000")[1]
    monkeypatch.setenv("DDX_THREADS", "6")
    assert run(capsys, "theta", "--n", "100000")[1] == base
    monkeypatch.setenv("DDX_THREADS", "junk")
    assert run(capsys, "theta", "--n", "100000")[1] == base


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ddx", "tau", "--p", "2", "--m", "2", "--n", "10"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout == '{"method": "explicit", "tau": 5}\n'


def test_converge_csv_matches_library_writer(capsys):
    from ddx import convergence_table, sieve
    from ddx.tau import convergence_csv

    code, out, _ = run(capsys, "converge", "--m", "3", "--checkpoints", "100,5000")
    assert code == 0
    assert out == convergence_csv(convergence_table(3, [100, 5000], sieve(5000)))
