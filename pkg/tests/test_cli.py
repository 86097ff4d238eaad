import csv
import io
import json
from importlib import resources

import jsonschema
import pytest

from christoffel.cli import EXIT_BOUND, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main

SCHEMA = json.loads(resources.files("christoffel").joinpath("schemas/output.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("argv", [
    ["trees", "enumerate", "--pairs", "2"],
    ["trees", "enumerate", "--multidegree", "1,1"],
    ["dims", "gaussian", "--n", "2"],
    ["dims", "cumulant", "--n", "5"],
    ["kernel", "--multidegree", "2,2"],
    ["basis", "covariant", "--multidegree", "2,1"],
    ["fla", "--degree", "4", "--basis", "m"],
    ["verify", "d-squared", "--max-vertices", "3"],
    ["verify", "correspondence", "--max-vertices", "3"],
    ["verify", "operad-axioms", "--max-vertices", "2"],
    ["verify", "chain-rule", "--n", "1"],
])
def test_json_matches_schema(capsys, argv):
    code, out = run(capsys, *argv, "--format", "json", "-q")
    assert code == EXIT_OK
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["command"] == argv[0]


def test_gaussian_text(capsys):
    code, out = run(capsys, "dims", "gaussian", "--n", "3", "-q")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1] == "total 507"


def test_trees_count(capsys):
    code, out = run(capsys, "trees", "enumerate", "--pairs", "2", "--format", "json", "-q")
    assert json.loads(out)["result"]["count"] == 54


def test_csv(capsys):
    code, out = run(capsys, "dims", "gaussian", "--n", "2", "--format", "csv", "-q")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["coefficient"] for r in rows} == {"1", "0", "28"}


def test_output_file(capsys, tmp_path):
    path = tmp_path / "fla.json"
    code, out = run(capsys, "fla", "--degree", "3", "--format", "json", "--output", str(path))
    assert code == EXIT_OK and out == ""
    doc = json.loads(path.read_text())
    assert doc["result"]["degree"] == 3


def test_seed_recorded(capsys):
    code, out = run(capsys, "verify", "chain-rule", "--n", "1", "--seed", "3", "--format", "json", "-q")
    doc = json.loads(out)
    assert doc["seed"] == 3 and doc["config"]["seed"] == 3


@pytest.mark.parametrize("argv,code", [
    (["dims", "bogus", "--n", "2"], EXIT_USAGE),
    (["dims", "gaussian", "--n", "0"], EXIT_USAGE),
    (["kernel", "--multidegree", "a,b"], EXIT_USAGE),
    (["verify", "nope"], EXIT_USAGE),
    (["verify", "d-squared", "--max-vertices", "0"], EXIT_USAGE),
    (["fla", "--degree", "40"], EXIT_BOUND),
    (["dims", "gaussian", "--n", "9"], EXIT_BOUND),
    (["kernel", "--multidegree", "4,4"], EXIT_BOUND),
    (["trees", "enumerate", "--pairs", "5"], EXIT_BOUND),
])
def test_exit_codes(capsys, argv, code):
    assert main(argv + ["-q"]) == code


def test_failure_exit_code(monkeypatch, capsys):
    from christoffel import verify
    from christoffel.twist import Report

    monkeypatch.setattr(verify, "d_squared", lambda *a: Report("forced", 1, ["x"]))
    assert main(["verify", "d-squared", "-q"]) == EXIT_FAIL


def test_workers_env(monkeypatch, capsys):
    _, serial = run(capsys, "dims", "cumulant", "--n", "5", "-q")
    monkeypatch.setenv("CHRISTOFFEL_WORKERS", "2")
    code, parallel = run(capsys, "dims", "cumulant", "--n", "5", "-q")
    assert code == EXIT_OK and parallel == serial
    assert serial.strip().endswith("total 160")
    monkeypatch.setenv("CHRISTOFFEL_WORKERS", "x")
    assert main(["dims", "cumulant", "--n", "5", "-q"]) == EXIT_USAGE
