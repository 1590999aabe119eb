import json
import subprocess
import sys

import numpy as np
import pytest

from ymstrata import cli
from ymstrata.errors import NoConvergence


def run(argv, capsys):
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_writes_valid_rep_file(tmp_path, capsys):
    path = tmp_path / "rep.json"
    code, out, _ = run(["solve", "--group", "SU2", "--genus", "2", "--seed", "42", "--out", str(path)], capsys)
    assert code == 0 and out == ""
    doc = json.loads(path.read_text())
    assert doc["residual"] <= 1e-12
    rep = cli.rep_from_document(doc)
    assert rep.genus == 2 and rep.spec.name == "SU2"


def test_torus_solve_is_exact(capsys):
    code, out, _ = run(["solve", "--group", "TorusK(1)", "--genus", "2"], capsys)
    assert code == 0 and json.loads(out)["residual"] < 1e-15


def test_rep_file_round_trips_bit_exactly(tmp_path, capsys):
    run(["solve", "--group", "U2", "--central", "-I", "--seed", "3", "--out", str(tmp_path / "a.json")], capsys)
    rep = cli.load_rep(tmp_path / "a.json")
    again = cli.rep_from_document(json.loads(cli.dumps(cli.rep_to_document(rep))))
    assert np.array_equal(rep.holonomies, again.holonomies)
    assert np.array_equal(rep.bundle.central, again.bundle.central)


def test_usage_errors(capsys):
    assert run(["solve", "--group", "Sp4"], capsys)[0] == 64
    assert run(["catalog", "nope"], capsys)[0] == 64
    assert run(["census", "--group", "SU2", "--samples", "-1"], capsys)[0] == 64
    assert run(["solve", "--group", "SU2", "--tolerance", "rank"], capsys)[0] == 64
    assert run(["frobnicate"], capsys)[0] == 64
    assert run(["catalog", "ramanathan", "--phi", "1,-1"], capsys)[0] == 64


def test_data_errors(tmp_path, capsys):
    assert run(["solve", "--group", "SO3", "--central", "-I"], capsys)[0] == 65
    assert run(["solve", "--group", "O2"], capsys)[0] == 65
    assert run(["classify", str(tmp_path / "missing.json")], capsys)[0] == 65
    (tmp_path / "junk.json").write_text("{not json")
    assert run(["classify", str(tmp_path / "junk.json")], capsys)[0] == 65


def test_no_convergence_exit_code(monkeypatch, capsys, caplog):
    def fail(*a, **k):
        raise NoConvergence(1.0, 500)

    monkeypatch.setattr(cli, "solve", fail)
    code, out, err = run(["solve", "--group", "SU2"], capsys)
    assert code == 2 and out == ""
    assert "residual" in caplog.text


def test_classify(tmp_path, capsys):
    path = tmp_path / "rep.json"
    run(["solve", "--group", "SU2", "--seed", "42", "--out", str(path)], capsys)
    code, out, _ = run(["classify", str(path)], capsys)
    result = json.loads(out)["result"]["classification"]
    assert code == 0 and result["top"] and result["label"] == "(Z)"

    doc = json.loads(path.read_text())
    for h in doc["holonomies"]:
        h["re"], h["im"] = [[-1.0, 0.0], [0.0, -1.0]], [[0.0, 0.0], [0.0, 0.0]]
    (tmp_path / "central.json").write_text(json.dumps(doc))
    code, out, _ = run(["classify", str(tmp_path / "central.json")], capsys)
    assert json.loads(out)["result"]["classification"]["label"] == "(SU2)"

    doc["holonomies"][0]["re"][0][0] = 0.5
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    assert run(["classify", str(tmp_path / "bad.json")], capsys)[0] == 65


def test_census_reports(tmp_path, capsys):
    code, out, _ = run(["census", "--group", "SU2", "--samples", "0"], capsys)
    assert code == 0 and json.loads(out)["result"]["labels"] == {}
    argv = ["census", "--group", "SU2", "--samples", "15", "--seed", "5"]
    _, a, _ = run(argv, capsys)
    _, b, _ = run(argv, capsys)
    assert a == b
    doc = json.loads(a)
    assert doc["schema_version"] == cli.SCHEMA_VERSION
    assert doc["seeds"]["base"] == 5 and len(doc["seeds"]["samples"]) == 15
    assert set(doc["result"]["labels"]) == {"(Z)", "(T)", "(SU2)"}
    assert list(doc) == sorted(doc)


def test_catalog_commands(capsys):
    code, out, _ = run(["catalog", "ramanathan"], capsys)
    assert code == 0 and json.loads(out)["result"]["passed"]
    code, out, _ = run(["catalog", "su2-strata", "--genus", "2"], capsys)
    assert sorted(json.loads(out)["result"]["data"]["dims"].values()) == [0, 4, 6]
    code, out, _ = run(["catalog", "u2-parity", "--central", "-I", "--samples", "5"], capsys)
    assert code == 0 and json.loads(out)["inputs"]["parity"] == "odd"


def test_tolerance_override_is_echoed(capsys):
    _, out, _ = run(["catalog", "ramanathan", "--tolerance", "num=1e-9"], capsys)
    assert json.loads(out)["tolerances"]["num"] == 1e-9


def test_console_entry_point_logs_to_stderr(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "ymstrata.cli", "solve", "--group", "SU2", "-v"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    json.loads(proc.stdout)
    assert "converged" in proc.stderr
