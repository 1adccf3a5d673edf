"""Tests for number formatting and rendering."""

import json
import math

import pytest

from exceptions import ArgumentError
from output import OutputEnvelope, format_number, gnuplot_script, render, to_json, write


ROWS = [
    {"alpha": 8.0, "branch": "iso", "eta": 0.0, "S": 0.0, "case": "i"},
    {"alpha": 8.0, "branch": "pos", "eta": 0.123456789012345678, "S": -0.0154320986265432, "case": "i"},
]
COLUMNS = ("alpha", "branch", "eta", "S", "case")


@pytest.mark.parametrize(
    "value, digits, text",
    [
        (-0.0, 12, "0"),
        (7.5, 12, "7.5"),
        (1.0 / 3.0, 5, "0.33333"),
        (1e-20, 12, "1e-20"),
        (True, 12, "true"),
        (3, 12, "3"),
        ("neg1", 12, "neg1"),
        (math.inf, 12, "inf"),
    ],
)
def test_format_number(value, digits, text):
    assert format_number(value, digits) == text


def test_envelope_defaults():
    assert OutputEnvelope("csv").precision == 12
    assert OutputEnvelope("table").precision == 12
    assert OutputEnvelope("json").precision == 17
    assert OutputEnvelope("json", digits=14).precision == 14


@pytest.mark.parametrize("kwargs", [{"format": "xml"}, {"format": "csv", "digits": 0}, {"format": "csv", "digits": 18}])
def test_envelope_rejects_bad_values(kwargs):
    with pytest.raises(ArgumentError):
        OutputEnvelope(**kwargs)


def test_csv_has_header_and_lf_endings():
    text = render(ROWS, COLUMNS, OutputEnvelope("csv"))
    lines = text.split("\n")
    assert lines[0] == "alpha,branch,eta,S,case"
    assert lines[1] == "8,iso,0,0,i"
    assert lines[2].startswith("8,pos,0.123456789012,")
    assert "\r" not in text
    assert text.endswith("\n")


def test_json_round_trips_byte_identically():
    text = render(ROWS, COLUMNS, OutputEnvelope("json"))
    parsed = json.loads(text)
    assert parsed[1]["eta"] == ROWS[1]["eta"]
    assert to_json(parsed, 17) == text


def test_json_non_finite_becomes_null():
    assert json.loads(to_json({"x": math.nan, "y": [math.inf, 1.5]})) == {"x": None, "y": [None, 1.5]}


def test_json_header_fields_wrap_rows():
    text = render(ROWS[:1], ("eta",), OutputEnvelope("json"), header_fields={"alpha": 10.0, "case": "i"})
    assert json.loads(text) == {"alpha": 10, "case": "i", "rows": [{"eta": 0}]}


def test_table_is_aligned_with_header_line():
    text = render(ROWS, COLUMNS, OutputEnvelope("table", digits=4), header_fields={"alpha": 8.0})
    lines = text.splitlines()
    assert lines[0] == "# alpha=8"
    assert len({len(line) for line in lines[1:]}) == 1
    assert "0.1235" in lines[-1]


def test_gnuplot_script_reads_the_csv():
    script = gnuplot_script("sweep.csv")
    assert "'sweep.csv'" in script
    assert "set datafile separator ','" in script
    assert script.count("plot for [b in branches]") == 2


def test_write_to_file(tmp_path):
    target = tmp_path / "out.csv"
    write("a,b\n1,2\n", str(target))
    assert target.read_bytes() == b"a,b\n1,2\n"
