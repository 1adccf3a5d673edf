"""
Rendering of command results.

Responsibilities:
- OutputEnvelope: format (table, csv, json), significant digits, destination
- Locale-independent number formatting (`%.{digits}g`, -0 printed as 0)
- Aligned text tables, CSV (UTF-8, LF line endings, header row) and JSON whose
  floats carry exactly the requested significant digits, so that parsing and
  re-serialising at the same precision reproduces the same bytes
- A gnuplot script for sweep CSV files
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

import click

from config import CSV_DIGITS, JSON_DIGITS, TABLE_DIGITS
from exceptions import ArgumentError
from models import BRANCHES


logger = logging.getLogger(__name__)

FORMATS = ("table", "csv", "json")
_DEFAULT_DIGITS = {"table": TABLE_DIGITS, "csv": CSV_DIGITS, "json": JSON_DIGITS}


@dataclass(frozen=True)
class OutputEnvelope:
    """How and where a command prints; digits=None means the format's default."""

    format: str = "table"
    digits: Optional[int] = None
    destination: Optional[str] = None

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise ArgumentError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        if self.digits is not None and not 1 <= self.digits <= 17:
            raise ArgumentError(f"digits must be between 1 and 17, got {self.digits!r}")

    @property
    def precision(self) -> int:
        return self.digits if self.digits is not None else _DEFAULT_DIGITS[self.format]


def format_number(value: Any, digits: int) -> str:
    """Text for one cell; floats use `%.{digits}g`, everything else str()."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if value == 0.0:
            value = 0.0
        return f"{value:.{digits}g}"
    return str(value)


def _json_value(value: Any, digits: int, indent: int) -> str:
    pad = "  " * (indent + 1)
    close = "  " * indent
    if value is None or isinstance(value, bool) or isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value, digits) if math.isfinite(value) else "null"
    if isinstance(value, Mapping):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_value(v, digits, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [pad + _json_value(v, digits, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialise {type(value).__name__} to JSON")


def to_json(value: Any, digits: int = JSON_DIGITS) -> str:
    """JSON text with floats at `digits` significant digits; non-finite floats become null."""
    return _json_value(value, digits, 0) + "\n"


def _table(rows: Sequence[Mapping[str, Any]], columns: Sequence[str], digits: int) -> str:
    cells = [[format_number(row.get(c, ""), digits) for c in columns] for row in rows]
    widths = [max([len(c)] + [len(r[i]) for r in cells]) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells)
    return "\n".join(lines) + "\n"


def _csv(rows: Sequence[Mapping[str, Any]], columns: Sequence[str], digits: int) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_number(row.get(c, ""), digits) for c in columns])
    return buffer.getvalue()


def render(
    rows: Sequence[Mapping[str, Any]],
    columns: Sequence[str],
    envelope: OutputEnvelope,
    header_fields: Optional[Mapping[str, Any]] = None,
) -> str:
    """
    Render rows in the envelope's format.

    Args:
        rows: One mapping per output row.
        columns: Column order (and the CSV header).
        envelope: Format and precision.
        header_fields: Values describing the whole result (alpha, case).
            Tables print them on a leading `# key=value` line; JSON wraps the
            rows as {**header_fields, "rows": [...]}; CSV ignores them, so
            callers that need them in CSV put them into the columns.
    """
    digits = envelope.precision
    if envelope.format == "json":
        body: List[Dict[str, Any]] = [{c: row.get(c) for c in columns} for row in rows]
        if header_fields:
            return to_json({**header_fields, "rows": body}, digits)
        return to_json(body, digits)
    if envelope.format == "csv":
        return _csv(rows, columns, digits)
    text = _table(rows, columns, digits)
    if header_fields:
        head = " ".join(f"{k}={format_number(v, digits)}" for k, v in header_fields.items())
        text = f"# {head}\n" + text
    return text


def gnuplot_script(csv_path: str) -> str:
    """Plot eta and S against alpha, one point series per branch."""
    branches = " ".join(BRANCHES)
    source = str(csv_path).replace("'", "")
    lines = [
        "set datafile separator ','",
        "set key outside right",
        "set xlabel 'alpha'",
        f"branches = '{branches}'",
        "set multiplot layout 2,1",
        "set ylabel 'eta'",
        f"plot for [b in branches] '{source}' using 1:(strcol(2) eq b ? $3 : 1/0) every ::1 with points title b",
        "set ylabel 'S'",
        f"plot for [b in branches] '{source}' using 1:(strcol(2) eq b ? $4 : 1/0) every ::1 with points title b",
        "unset multiplot",
        "",
    ]
    return "\n".join(lines)


def write(text: str, destination: Optional[str] = None) -> None:
    """Print to stdout, or write the file (UTF-8, LF) when destination is a path."""
    if destination is None or destination == "-":
        click.echo(text, nl=False)
        return
    path = Path(destination)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    logger.info("wrote %d bytes to %s", len(text.encode("utf-8")), path)


__all__ = [
    "FORMATS",
    "OutputEnvelope",
    "format_number",
    "to_json",
    "render",
    "gnuplot_script",
    "write",
]
