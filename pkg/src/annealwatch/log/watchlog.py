"""Logger factory for annealwatch.

`WatchLog` configures stdlib loggers once with a colorized console handler and, on request, a
rotating file handler. Experiment stages attach their name through `extra={"stage": ...}` and
both formatters render it as a `[stage]` tag.
"""

from __future__ import annotations

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

from annealwatch.core.singleton import Singleton
from annealwatch.log.formatters import CustomFormatter, FileFormatter
from annealwatch.log.types import LogLevel


class WatchLog(metaclass=Singleton):
    """Configure and hand out loggers.

    Usage:
        logger = WatchLog.get_logger(__name__)
        logger.info("Embedding %s logical variables.", k)
        logger.warning("Chain broke.", extra={"stage": "sample"})
    """

    @classmethod
    def get_logger(
        cls,
        logger_name: str = "annealwatch",
        level: int | str = "INFO",
        simple: bool = False,
        show_context: bool = False,
        color: bool = True,
        log_file: Path | None = None,
    ) -> logging.Logger:
        """Get a configured logger instance.

        Args:
            logger_name: Dotted logger name, normally the calling module's `__name__`. Names
                outside the `annealwatch` prefix are not reached by `set_level` or `attach_file`.
            level: The log level as a string ("DEBUG", "INFO", etc.) or a logging constant.
            simple: If True, show only the message (and stage tag).
            show_context: If True, include the logger and function name.
            color: If True, color-code output by level.
            log_file: Optional file to receive the same records. Added even when the logger was
                      configured before, so each run directory gets its own log.
        """
        logger = logging.getLogger(logger_name)

        if not logger.handlers:
            log_level = LogLevel.get_level(level)
            logger.setLevel(log_level)

            console_handler = logging.StreamHandler()
            console_handler.setFormatter(
                CustomFormatter(simple=simple, color=color, show_context=show_context)
            )
            console_handler.setLevel(log_level)
            logger.addHandler(console_handler)
            logger.propagate = False

        if log_file is not None:
            cls.add_file_handler(logger, log_file)

        return logger

    @staticmethod
    def add_file_handler(logger: logging.Logger, log_file: Path) -> None:
        """Attach a rotating file handler unless one for the same file is already attached."""
        log_file = Path(log_file).absolute()
        for handler in logger.handlers:
            if isinstance(handler, RotatingFileHandler) and Path(handler.baseFilename) == log_file:
                return

        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(log_file, maxBytes=512 * 1024, backupCount=2)
        file_handler.setFormatter(FileFormatter())
        file_handler.setLevel(logging.DEBUG)
        logger.addHandler(file_handler)

    @staticmethod
    def remove_file_handlers(logger: logging.Logger) -> None:
        """Detach and close every file handler, leaving the console handler in place."""
        for handler in list(logger.handlers):
            if isinstance(handler, RotatingFileHandler):
                logger.removeHandler(handler)
                handler.close()

    @staticmethod
    def package_loggers(prefix: str = "annealwatch") -> list[logging.Logger]:
        """Every configured logger whose name is `prefix` or starts with `prefix.`."""
        manager = logging.Logger.manager
        return [
            logger
            for name, logger in sorted(manager.loggerDict.items())
            if isinstance(logger, logging.Logger)
            and (name == prefix or name.startswith(f"{prefix}."))
        ]

    @classmethod
    def set_level(cls, level: int | str, prefix: str = "annealwatch") -> None:
        """Set the level of every package logger and its console handler."""
        log_level = LogLevel.get_level(level)
        for logger in cls.package_loggers(prefix):
            logger.setLevel(log_level)
            for handler in logger.handlers:
                if not isinstance(handler, RotatingFileHandler):
                    handler.setLevel(log_level)

    @classmethod
    def attach_file(cls, log_file: Path, prefix: str = "annealwatch") -> None:
        """Send every package logger's records to `log_file` as well."""
        for logger in cls.package_loggers(prefix):
            cls.add_file_handler(logger, log_file)

    @classmethod
    def detach_files(cls, prefix: str = "annealwatch") -> None:
        for logger in cls.package_loggers(prefix):
            cls.remove_file_handlers(logger)
