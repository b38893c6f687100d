import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from synczeta import serialize
from synczeta.cli import main

EXAMPLES = Path(__file__).resolve().parent.parent / "docs" / "examples"


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def call(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def job(tmp_path, model, analyses, **extra):
    return write(tmp_path, "job.json", {"model": model, "analyses": analyses, **extra})


SOLENOID = {"kind": "SIntegerPair", "a": 6, "b": 3, "primes": [3]}
DOUBLING = {"kind": "CirclePower", "d_alpha": 2, "d_beta": 1}


def test_classify_solenoid(tmp_path, capsys):
    code, out = call(capsys, "classify", write(tmp_path, "m.json", SOLENOID), "--n", "64")
    assert code == 0
    assert out["results"]["classify"]["verdict"] == "NaturalBoundary"
    assert out["results"]["classify"]["witnesses"] == [{"p": 3}]


def test_zeta_doubling(tmp_path, capsys):
    code, out = call(capsys, "run", job(tmp_path, DOUBLING, ["zeta"], n_max=64))
    assert code == 0
    assert out["results"]["zeta"]["rational"] == {"num": ["1", "-1"], "den": ["1", "-2"]}


def test_zeta_noncommuting_swaps_residues(tmp_path, capsys):
    model = json.loads((EXAMPLES / "finite_maps.json").read_text())
    code, out = call(capsys, "run", job(tmp_path, model, ["zeta", "classify"], n_max=16))
    assert code == 0
    res = out["results"]["zeta"]["residue"]
    assert res["A"] == [-1.5, -1.5] and res["L"] == 2
    assert out["results"]["classify"]["verdict"] == "AlgebraicCandidate"


def test_counts_csv(tmp_path, capsys):
    path = tmp_path / "c.csv"
    code, out = call(capsys, "counts", str(EXAMPLES / "circle_power.json"), "--n", "3", "--csv", str(path))
    assert code == 0
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n", "count", "root_n"]
    assert rows[1:] == [["1", "1", "1.0"], ["2", "3", "1.73205080756888"], ["3", "7", "1.91293118277239"]]


def test_counts_csv_zero_row(tmp_path, capsys):
    model = write(tmp_path, "m.json", {"kind": "FiniteMaps", "sigma1": [1, 2, 0], "sigma2": [0, 1, 2]})
    path = tmp_path / "c.csv"
    call(capsys, "counts", model, "--n", "3", "--csv", str(path))
    rows = list(csv.reader(path.open()))
    assert rows[1] == ["1", "0", ""] and rows[3][:2] == ["3", "3"]


def test_counts_solenoid(tmp_path, capsys):
    _, out = call(capsys, "counts", write(tmp_path, "m.json", SOLENOID), "--n", "6")
    assert out["results"]["counts"]["counts"] == ["1", "1", "7", "5", "31", "7"]


def test_congruence_default_horizon(tmp_path, capsys):
    code, out = call(capsys, "congruence", write(tmp_path, "m.json", SOLENOID))
    assert code == 0 and out["n_max"] == 60
    assert out["results"]["congruence"]["failures"] == []


def test_exit_code_not_tame(tmp_path, capsys):
    bad = {"kind": "CirclePower", "d_alpha": 2, "d_beta": -2}
    code, out = call(capsys, "classify", write(tmp_path, "m.json", bad))
    assert code == 3 and out["error"]["type"] == "NotTame" and out["error"]["n"] == 2


def test_exit_code_invalid_input(tmp_path, capsys):
    code, out = call(capsys, "run", write(tmp_path, "j.json", {"analyses": ["zeta"]}))
    assert code == 2 and out["error"]["type"] == "InvalidInput"
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    assert main(["classify", str(p)]) == 2
    capsys.readouterr()


def test_exit_code_precondition(tmp_path, capsys):
    code, out = call(capsys, "run", job(tmp_path, SOLENOID, ["trichotomy"], n_max=64))
    assert code == 4 and out["error"]["type"] == "RequiresRationalZeta"


def test_missing_file(capsys):
    assert main(["classify", "/nonexistent/model.json"]) == 1
    capsys.readouterr()


def test_batch_runs_every_job_and_reports_worst_code(tmp_path, capsys):
    code, out = call(capsys, "run", str(EXAMPLES / "batch_job.json"))
    assert code == 0 and len(out["reports"]) == 5
    batch = {"jobs": [{"model": DOUBLING, "analyses": ["growth"]},
                      {"model": SOLENOID, "analyses": ["trichotomy"]}]}
    code, out = call(capsys, "run", write(tmp_path, "b.json", batch))
    assert code == 4
    assert "results" in out["reports"][0] and "error" in out["reports"][1]


def test_workers_give_same_output(capsys):
    main(["run", str(EXAMPLES / "batch_job.json")])
    serial = capsys.readouterr().out
    main(["run", str(EXAMPLES / "batch_job.json"), "--workers", "2"])
    assert capsys.readouterr().out == serial


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out = call(capsys, "run", job(tmp_path, DOUBLING, ["growth"], output={"path": str(target)}))
    assert code == 0 and json.loads(target.read_text()) == out


def test_determinism_console_script(tmp_path):
    cmd = [sys.executable, "-m", "synczeta", "run", str(EXAMPLES / "batch_job.json")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_reports_validate_against_schema(capsys):
    _, out = call(capsys, "run", str(EXAMPLES / "batch_job.json"))
    for rep in out["reports"]:
        serialize.validate(rep, serialize.REPORT_SCHEMA)


@pytest.mark.parametrize("path", sorted(p.name for p in EXAMPLES.glob("*.json") if p.name != "batch_job.json"))
def test_example_models_round_trip(path):
    doc = json.loads((EXAMPLES / path).read_text())
    model = serialize.model_from_json(doc)
    assert serialize.model_from_json(serialize.model_to_json(model)) == model


def test_big_integers_are_strings(tmp_path, capsys):
    _, out = call(capsys, "counts", write(tmp_path, "m.json", {"kind": "CirclePower", "d_alpha": "10", "d_beta": 1}),
                  "--n", "30")
    assert out["results"]["counts"]["counts"][-1] == str(10 ** 30 - 1)


def test_torsion_job(tmp_path, capsys):
    model = json.loads((EXAMPLES / "homology_data.json").read_text())
    code, out = call(capsys, "run", job(tmp_path, model, ["torsion"], torsion_samples=["1/2", "1/4", "0"]))
    assert code == 0
    taus = out["results"]["torsion"]["tau"]
    assert taus[0]["exact"] == "7/6"
    assert taus[1]["value"] == pytest.approx(1.21655250605964, abs=1e-12)
    assert taus[2]["value"] is None
