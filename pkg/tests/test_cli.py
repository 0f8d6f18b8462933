import csv
import io
import json
import subprocess
import sys

import pytest

from ellfrob.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_hasse_json(capsys):
    code, out = run_cli(capsys, "hasse", "--p", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["p"] == "5"
    assert doc["terms"] == [["1", "0", "2"]]


def test_hasse_rejects_composite(capsys):
    code, _ = run_cli(capsys, "hasse", "--p", "15")
    assert code == 1


def test_classify(capsys):
    code, out = run_cli(capsys, "classify", "--p", "13", "--a", "0", "--b", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["label"] == "ordinary"
    assert doc["delta_unit"] is True


def test_lift_mod1_ok(capsys):
    code, out = run_cli(capsys, "lift", "--p", "13", "--a", "0", "--b", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] is True


def test_lift_not_ordinary_exits_1(capsys):
    code, _ = run_cli(capsys, "lift", "--p", "5", "--a", "0", "--b", "1")
    assert code == 1


def test_lift_mod2(capsys):
    code, out = run_cli(capsys, "lift", "--p", "13", "--a", "1", "--b", "1",
                        "--mod", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["verified"] is True
    assert doc["branch"] == "general"


def test_eigen_numeric(capsys):
    code, out = run_cli(capsys, "eigen", "--p", "13", "--a", "1", "--b", "1")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"p", "a", "b", "v0", "theta", "det"}


def test_eigen_symbolic(capsys):
    code, out = run_cli(capsys, "eigen", "--p", "13")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["theta"]) == {"const", "z4prime", "z6prime"}
    assert "num" in doc["det"]


def test_scan_json_and_csv(capsys):
    code, out_json = run_cli(capsys, "scan", "--pmin", "11", "--pmax", "17")
    assert code == 0
    rows = json.loads(out_json)
    assert [r["p"] for r in rows] == ["11", "13", "17"]
    assert [r["constant_c"] for r in rows] == ["4", "2", "12"]
    code, out_csv = run_cli(capsys, "scan", "--pmin", "11", "--pmax", "17",
                            "--format", "csv")
    assert code == 0
    table = list(csv.reader(io.StringIO(out_csv)))
    assert table[0][0] == "p"
    assert len(table) == 4
    assert table[1][0] == "11" and table[1][7] == "4"


def test_scan_csv_inferred_from_out_suffix(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    code, _ = run_cli(capsys, "scan", "--pmin", "11", "--pmax", "13",
                      "--out", str(out))
    assert code == 0
    table = list(csv.reader(io.StringIO(out.read_text())))
    assert table[0][0] == "p" and len(table) == 3


def test_scan_deterministic_across_threads(capsys, monkeypatch):
    monkeypatch.setenv("HD_THREADS", "1")
    _, one = run_cli(capsys, "scan", "--pmin", "11", "--pmax", "31")
    monkeypatch.setenv("HD_THREADS", "4")
    _, four = run_cli(capsys, "scan", "--pmin", "11", "--pmax", "31")
    assert one == four


def test_verify_all_p5(capsys):
    code, out = run_cli(capsys, "verify-all", "--p", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["failed"] == "0"
    assert doc["pairs"] == "25"


def test_verify_all_sampled_mod2(capsys):
    code, out = run_cli(capsys, "verify-all", "--p", "13", "--mod", "2",
                        "--samples", "12", "--seed", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["failed"] == "0"


def test_constants(capsys):
    code, out = run_cli(capsys, "constants", "--p", "13")
    assert code == 0
    doc = json.loads(out)
    # 13 = 1 mod 3 and 1 mod 4: both constant families present
    assert {"beta_1", "beta_4", "beta", "alpha_2", "alpha_4", "alpha"} <= set(doc)


def test_hasse_out_file(tmp_path, capsys):
    out = tmp_path / "h.json"
    code, _ = run_cli(capsys, "hasse", "--p", "11", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["terms"] == [["1", "1", "9"]]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ellfrob.cli", "hasse",
                           "--p", "7"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["p"] == "7"
