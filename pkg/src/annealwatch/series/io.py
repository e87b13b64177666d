"""Series CSV and report JSON files.

A series file is a single-column CSV whose header is the series label. A report file is the flat
JSON object from `StatReport.to_dict`, keys sorted, so identical reports give identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any

from annealwatch.core import FileFormatError, SeriesError
from annealwatch.series.types import EnergySeries, StatReport


def save_series(s: EnergySeries, path: Path | str) -> Path:
    """Write `s` to `path` with its label (or "value") as the header."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([s.label or "value"])
        writer.writerows([repr(float(v))] for v in s.values)
    return path


def load_series(path: Path | str) -> EnergySeries:
    """Read a series written by `save_series`.

    Raises:
        FileFormatError: If the file is empty, has more than one column, or holds a value that is
            not a finite number.
    """
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows:
        raise FileFormatError(path, 0, "missing header")
    header, body = rows[0], rows[1:]
    if len(header) != 1:
        raise FileFormatError(path, 1, f"expected one column, got {len(header)}")

    values: list[float] = []
    for lineno, row in enumerate(body, start=2):
        if not row:
            continue
        if len(row) != 1:
            raise FileFormatError(path, lineno, f"expected one value, got {len(row)}")
        try:
            values.append(float(row[0]))
        except ValueError as e:
            raise FileFormatError(path, lineno, str(e)) from e

    try:
        return EnergySeries(values, header[0])
    except SeriesError as e:
        raise FileFormatError(path, 0, str(e)) from e


def save_report(report: StatReport, path: Path | str) -> Path:
    """Write `report` as an indented JSON object with sorted keys."""
    path = Path(path)
    path.write_text(dumps_report(report), encoding="utf-8")
    return path


def dumps_report(report: StatReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"


def load_report(path: Path | str) -> StatReport:
    """Read a report written by `save_report`.

    Raises:
        FileFormatError: If the file is not a JSON object of statistics.
    """
    path = Path(path)
    try:
        data: Any = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FileFormatError(path, e.lineno, e.msg) from e
    if not isinstance(data, dict):
        raise FileFormatError(path, 1, "expected a JSON object")
    try:
        return StatReport.from_dict(data)
    except (SeriesError, TypeError) as e:
        raise FileFormatError(path, 0, str(e)) from e
