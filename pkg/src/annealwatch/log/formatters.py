from __future__ import annotations

import os
from dataclasses import dataclass
from datetime import datetime
from logging import Formatter, LogRecord
from zoneinfo import ZoneInfo

from tzlocal import get_localzone

from annealwatch.log.types import LEVEL_TAGS, LogColors, LogLevel


def _stage_of(record: LogRecord) -> str:
    """Return the experiment stage attached to a record via `extra`, if any."""
    stage = getattr(record, "stage", None)
    return f"[{stage}] " if stage else ""


@dataclass
class CustomFormatter(Formatter):
    """Console formatter with level colors and an optional `[stage]` tag."""

    simple: bool = False
    show_context: bool = False
    color: bool = True

    def __post_init__(self):
        super().__init__()
        tz_name = os.getenv("TZ")
        self._tz = ZoneInfo(tz_name) if tz_name else get_localzone()

    def formatTime(self, record: LogRecord, datefmt: str | None = None) -> str:  # noqa: N802
        """Format the time in a log record."""
        ct = datetime.fromtimestamp(record.created, tz=self._tz)
        return ct.strftime(datefmt) if datefmt else ct.isoformat()

    def format(self, record: LogRecord) -> str:
        """Format the log record based on the formatter style."""
        if self.color:
            level_color = LogLevel.get_color(record.levelname)
            reset, bold, gray = LogColors.RESET, LogColors.BOLD, LogColors.GRAY
            blue, cyan = LogColors.BLUE, LogColors.CYAN
        else:
            level_color = reset = bold = gray = blue = cyan = ""

        stage = _stage_of(record)

        if self.simple:  # Messages above INFO show in bold
            bold = "" if record.levelname in {"DEBUG", "INFO"} else bold
            return f"{reset}{bold}{level_color}{stage}{record.getMessage()}{reset}"

        record.asctime = self.formatTime(record, "%I:%M:%S %p")
        timestamp = f"{reset}{gray}{record.asctime}{reset} "
        log_level = f"{bold}{level_color}{LEVEL_TAGS.get(record.levelname, '')}{reset}"

        if record.levelname not in {"DEBUG", "INFO"}:
            reset = f"{level_color}{reset}"

        context = " "
        if self.show_context:
            context = f" {blue}{record.name}:{reset} {cyan}{record.funcName}: "
        message = f"{level_color}{stage}{record.getMessage()}{reset}"
        return f"{timestamp}{log_level}{context}{message}"


@dataclass
class FileFormatter(Formatter):
    """Plain formatter for run log files."""

    def format(self, record: LogRecord) -> str:
        """Format a log record for file output."""
        record.asctime = self.formatTime(record, "%Y-%m-%d %H:%M:%S")
        return (
            f"[{record.asctime}] [{record.levelname}] {record.name}: "
            f"{_stage_of(record)}{record.getMessage()}"
        )
