import csv
import io
import json
import subprocess
import sys

import pytest

from pgroupdim.checks import RunConfig, run
from pgroupdim.cli import main
from pgroupdim.errors import BudgetError, UnknownCheckError


def run_cli(*argv):
    out = subprocess.run(
        [sys.executable, "-m", "pgroupdim.cli", *argv], capture_output=True, text=True
    )
    return out


def test_empty_check_list_passes():
    report = run(RunConfig(p=3, k=1, checks=("none",)))
    assert report["results"] == [] and report["pass"]


def test_unknown_check_raises():
    with pytest.raises(UnknownCheckError):
        run(RunConfig(p=3, k=1, checks=("no-such-check",)))


def test_budget_guard():
    with pytest.raises(BudgetError):
        run(RunConfig(p=3, k=3, checks=("gamma-ranks",)))
    with pytest.raises(BudgetError):
        run(RunConfig(p=11, k=1, checks=("gamma-ranks",)))
    # explicit override is honored (7,1 is inside the table anyway)
    rep = run(RunConfig(p=7, k=1, checks=("shift-power",), force=True))
    assert rep["pass"]


def test_exit_codes(tmp_path):
    assert main(["verify", "--p", "3", "--k", "1", "--checks", "gamma-ranks"]) == 0
    assert main(["verify", "--p", "3", "--k", "3", "--checks", "gamma-ranks"]) == 3
    assert main(["verify", "--p", "3", "--k", "1", "--checks", "bogus"]) == 2
    assert main(["verify", "--p", "4", "--k", "1", "--checks", "gamma-ranks"]) == 2
    assert main(["series", "--p", "3", "--k", "1", "--kind", "nope"]) == 2


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--p", "3", "--k", "1", "--checks",
            "gamma-ranks,dial-density,power-congruences", "--seed", "5"]
    assert main([*args, "--out", str(a)]) == 0
    assert main([*args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_report_schema(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--p", "3", "--k", "1", "--checks", "order", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["schema"] == "pgroupdim-report/1"
    assert rep["config"]["checks"] == ["order"]
    row = rep["results"][0]
    assert set(row) == {"check", "params", "index", "expected", "computed", "pass"}
    assert row["params"] == {"p": 3, "k": 1}


def test_csv_report(tmp_path):
    out = tmp_path / "r.csv"
    assert main(
        ["verify", "--p", "3", "--k", "1", "--checks", "gamma-ranks", "--format", "csv",
         "--out", str(out)]
    ) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert rows and rows[0]["check"] == "gamma-ranks"
    assert all(r["pass"] == "True" for r in rows)


def test_series_subcommand(tmp_path):
    out = tmp_path / "s.json"
    assert main(["series", "--p", "3", "--k", "1", "--kind", "gamma", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["schema"] == "pgroupdim-series/1"
    assert [r["log_order"] for r in payload["rows"]] == [7, 5, 4, 2, 1, 0]


def test_hdim_subcommand(tmp_path):
    out = tmp_path / "h.json"
    assert main(
        ["hdim", "--p", "3", "--k", "1", "--subgroup", "Z", "--kind", "F", "--out", str(out)]
    ) == 0
    payload = json.loads(out.read_text())
    assert payload["rows"][-1]["quotient"] == "3/7"


def test_dial_subcommand(tmp_path):
    out = tmp_path / "d.json"
    assert main(
        ["dial", "--p", "3", "--k", "1", "--eta", "1/2", "--kind", "L", "--out", str(out)]
    ) == 0
    payload = json.loads(out.read_text())
    assert payload["target"] == "1/2"
    # granularity at (3,1) is one central dimension out of three
    assert abs(payload["achieved_decimal"] - 0.5) <= 1 / 6 + 1e-12


def test_cli_process_entry():
    out = run_cli("verify", "--p", "3", "--k", "1", "--checks", "none")
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["pass"] is True
