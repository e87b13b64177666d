"""Files of a run directory.

    config.yaml   the effective configuration
    raw.csv       one row per call: call, beta, sweeps, [program], problem energies, indicator,
                  broken-chain fraction
    reads.csv     optional, one row per read
    stats.json    the StatReport
    gate.csv      the two-phase gate log (single-problem runs)
    strata.csv    the stratified energy histogram (single-problem runs)
    acf.csv       ACF and PACF of every series
    run.log       the run's log, with timestamps

Everything except `run.log` is a function of the configuration alone, and everything except
`config.yaml`, `raw.csv` and `reads.csv` is a function of `raw.csv` and the analysis settings.
Floats are written with `repr`, so they read back exactly.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import TYPE_CHECKING, Any, Self

import numpy as np

from annealwatch.core import ConfigError, FileFormatError
from annealwatch.series import EnergySeries

if TYPE_CHECKING:
    from collections.abc import Iterable, Sequence
    from types import TracebackType
    from typing import TextIO

    from annealwatch.series import StatReport

CONFIG_FILE = "config.yaml"
RAW_FILE = "raw.csv"
READS_FILE = "reads.csv"
STATS_FILE = "stats.json"
GATE_FILE = "gate.csv"
STRATA_FILE = "strata.csv"
ACF_FILE = "acf.csv"
LOG_FILE = "run.log"


class RunMode(StrEnum):
    """Which experiment produced a raw table."""

    RUN = "run"
    TREND = "trend"
    ALTERNATE = "alternate"


def problem_columns(count: int) -> list[str]:
    """Column names of the problem energies: `problem`, or `problem_0`... for several."""
    return ["problem"] if count == 1 else [f"problem_{i}" for i in range(count)]


def raw_columns(count: int, alternating: bool = False) -> list[str]:
    head = ["call", "beta", "sweeps"] + (["program"] if alternating else [])
    return [*head, *problem_columns(count), "indicator", "broken"]


@dataclass(frozen=True, eq=False)
class RawTable:
    """The per-call table of a run, one array per column."""

    columns: tuple[str, ...]
    data: dict[str, np.ndarray] = field(repr=False)

    def __len__(self) -> int:
        return int(self.data["call"].size) if self.columns else 0

    @property
    def problems(self) -> list[str]:
        return [c for c in self.columns if c.startswith("problem")]

    @property
    def mode(self) -> RunMode:
        if "program" in self.columns:
            return RunMode.ALTERNATE
        return RunMode.TREND if len(self.problems) > 1 else RunMode.RUN

    def series(self, column: str) -> EnergySeries:
        """A column as a labeled series.

        Raises:
            ConfigError: If the table has no such column.
        """
        if column not in self.data:
            msg = f"Raw table has no column '{column}'."
            raise ConfigError(msg)
        return EnergySeries(self.data[column], column)

    @classmethod
    def from_rows(cls, columns: Sequence[str], rows: Iterable[Sequence[float]]) -> RawTable:
        matrix = np.array(list(rows), dtype=np.float64).reshape(-1, len(columns))
        return cls(tuple(columns), {c: matrix[:, i] for i, c in enumerate(columns)})


class RawWriter:
    """Append call rows to a CSV, flushing after every row so an aborted run keeps its data."""

    def __init__(self, path: Path, columns: Sequence[str]):
        self.path = path
        self.columns = list(columns)
        self.rows = 0
        self._file: TextIO | None = None
        self._writer: Any = None

    def __enter__(self) -> Self:
        self._file = self.path.open("w", encoding="utf-8", newline="")
        self._writer = csv.writer(self._file, lineterminator="\n")
        self._writer.writerow(self.columns)
        self._file.flush()
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        if self._file is not None:
            self._file.close()
            self._file = None

    def write(self, values: Sequence[int | float]) -> None:
        if self._file is None:
            msg = "RawWriter must be used as a context manager."
            raise RuntimeError(msg)
        if len(values) != len(self.columns):
            msg = f"Row has {len(values)} values for {len(self.columns)} columns."
            raise ValueError(msg)
        self._writer.writerow([_cell(v) for v in values])
        self._file.flush()
        self.rows += 1


def read_raw(path: Path | str) -> RawTable:
    """Read a raw per-call CSV.

    Raises:
        FileFormatError: If the header lacks the required columns or a value is not numeric.
    """
    path = Path(path)
    with path.open(encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header is None:
            raise FileFormatError(path, 0, "missing header")
        for required in ("call", "indicator"):
            if required not in header:
                raise FileFormatError(path, 1, f"missing column '{required}'")
        if not any(c.startswith("problem") for c in header):
            raise FileFormatError(path, 1, "no problem column")

        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise FileFormatError(path, lineno, f"expected {len(header)} values")
            try:
                rows.append([float(v) for v in row])
            except ValueError as e:
                raise FileFormatError(path, lineno, str(e)) from e

    if not rows:
        raise FileFormatError(path, 0, "no call rows")
    return RawTable.from_rows(header, rows)


def write_table(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a small CSV in one go, formatting floats with `repr`."""
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows([_cell(v) for v in row] for row in rows)
    return path


@dataclass(frozen=True)
class RunArtifacts:
    """Where a run's files are, plus the report they hold."""

    run_dir: Path
    mode: RunMode
    calls: int
    report: StatReport = field(repr=False)
    files: tuple[str, ...] = ()

    def path(self, name: str) -> Path:
        return self.run_dir / name

    @property
    def raw_csv(self) -> Path:
        return self.run_dir / RAW_FILE

    @property
    def stats_json(self) -> Path:
        return self.run_dir / STATS_FILE


def _cell(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return repr(value)
    if value is None:
        return ""
    return value
