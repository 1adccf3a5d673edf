"""Command-line contract tests (click CliRunner)."""

import csv
import io
import json

import pytest
from click.testing import CliRunner

import cli as cli_module
from cli import cli
from models import OracleReport


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, list(args), catch_exceptions=False)


def test_eval_json_at_isotropic_limit(runner):
    result = invoke(runner, "eval", "--eta", "0", "--alpha", "7.5", "--format", "json")
    assert result.exit_code == 0
    row = json.loads(result.output)[0]
    assert row["b"] == 0
    assert abs(row["b1"]) < 1e-13
    assert abs(row["b2"]) < 1e-13
    assert row["b3"] == pytest.approx(-32.0 / 105.0, abs=1e-10)


def test_eval_table_shows_f(runner):
    result = invoke(runner, "eval", "--eta", "0", "--alpha", "7.5")
    assert result.exit_code == 0
    header, _, values = result.output.splitlines()
    cells = dict(zip(header.split(), values.split()))
    assert cells["f"] == "7.5"


@pytest.mark.parametrize("alpha", ["0", "-1", "nan", "abc"])
def test_eval_rejects_bad_alpha(runner, alpha):
    result = runner.invoke(cli, ["eval", "--eta", "1", "--alpha", alpha])
    assert result.exit_code == 2


def test_eval_rejects_infinite_eta(runner):
    result = runner.invoke(cli, ["eval", "--eta", "inf", "--alpha", "1"])
    assert result.exit_code == 2


def test_zeros_csv(runner):
    result = invoke(runner, "zeros", "--alpha", "10", "--format", "csv")
    assert result.exit_code == 0
    rows = list(csv.reader(io.StringIO(result.output)))
    assert rows[0] == ["alpha", "case", "eta", "multiplicity", "side", "bracket_lo", "bracket_hi"]
    assert len(rows) == 4
    assert {r[1] for r in rows[1:]} == {"i"}


def test_zeros_table_header_carries_case(runner):
    result = invoke(runner, "zeros", "--alpha", "5")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0].startswith("# alpha=5 case=v count=1")
    assert len(lines) == 4


def test_zeros_at_isotropic_limit(runner):
    result = invoke(runner, "zeros", "--alpha", "7.5", "--format", "json")
    report = json.loads(result.output)
    assert report["case"] == "ii"
    assert len(report["rows"]) == 2
    origin = [r for r in report["rows"] if r["side"] == "origin"][0]
    assert origin["multiplicity"] == 3


def test_zeros_at_critical_token(runner):
    result = invoke(runner, "zeros", "--alpha", "critical", "--format", "json")
    report = json.loads(result.output)
    assert report["case"] == "iv"
    assert report["count"] == 2


def test_critical_is_deterministic(runner):
    first = invoke(runner, "critical", "--format", "json")
    second = invoke(runner, "critical", "--format", "json")
    assert first.exit_code == 0
    assert first.output == second.output
    row = json.loads(first.output)[0]
    assert 20.0 / 3.0 < row["alpha_star"] < 7.5
    assert row["inclusion"] is True


def test_critical_digits(runner):
    full = json.loads(invoke(runner, "critical", "--format", "json").output)[0]
    result = invoke(runner, "critical", "--format", "csv", "--digits", "14")
    rows = list(csv.DictReader(io.StringIO(result.output)))
    assert rows[0]["alpha_star"] == format(full["alpha_star"], ".14g")


def test_sweep_csv(runner):
    result = invoke(runner, "sweep", "--alpha-min", "8", "--alpha-max", "10", "--steps", "3", "--format", "csv")
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "alpha,branch,eta,S,case"
    assert len(lines) == 10
    iso = [line.split(",") for line in lines[1:] if line.split(",")[1] == "iso"]
    assert len(iso) == 3
    assert all(cells[3] == "0" for cells in iso)


@pytest.mark.parametrize(
    "args",
    [
        ("--alpha-min", "10", "--alpha-max", "8", "--steps", "3"),
        ("--alpha-min", "8", "--alpha-max", "10", "--steps", "1"),
        ("--alpha-min", "8", "--alpha-max", "10", "--steps", "3", "--gnuplot"),
    ],
)
def test_sweep_usage_errors(runner, args):
    assert runner.invoke(cli, ["sweep", *args]).exit_code == 2


def test_sweep_gnuplot_script(runner, tmp_path):
    out = tmp_path / "branches.csv"
    result = invoke(
        runner,
        "sweep", "--alpha-min", "8", "--alpha-max", "9", "--steps", "2",
        "--format", "csv", "--out", str(out), "--gnuplot",
    )
    assert result.exit_code == 0
    assert out.read_text(encoding="utf-8").startswith("alpha,branch,eta,S,case\n")
    script = (tmp_path / "branches.gp").read_text(encoding="utf-8")
    assert str(out) in script


def test_verify_subset_json(runner):
    result = invoke(runner, "verify", "--only", "f-anchors", "--only", "third-derivative-at-origin", "--json")
    assert result.exit_code == 0
    reports = json.loads(result.output)
    assert [r["name"] for r in reports] == ["third-derivative-at-origin", "f-anchors"]
    assert all(r["passed"] is True for r in reports)


def test_verify_rejects_unknown_check(runner):
    assert runner.invoke(cli, ["verify", "--only", "nothing"]).exit_code == 2


def test_verify_failure_exits_one(runner, monkeypatch):
    failed = OracleReport(name="f-anchors", max_residual=1.0, tolerance=1e-10, samples=3, passed=False, detail="off")
    monkeypatch.setattr(cli_module, "run_checks", lambda names: [failed])
    result = runner.invoke(cli, ["verify", "--only", "f-anchors"])
    assert result.exit_code == 1
    assert "FAIL f-anchors: off" in result.output
