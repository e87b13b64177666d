"""Exception hierarchy shared by every annealwatch subpackage.

Each domain error also subclasses the builtin a caller would naturally catch, so code written
against `ValueError` or `RuntimeError` keeps working.
"""

from __future__ import annotations

from pathlib import Path


class AnnealWatchError(Exception):
    """Base class for all annealwatch errors."""


class ModelError(AnnealWatchError, ValueError):
    """A QUBO model was constructed or combined in an invalid way."""


class EvaluationError(ModelError, KeyError):
    """A sample does not cover the variables of the model it is evaluated against."""

    def __init__(self, variable: int, message: str | None = None):
        self.variable = variable
        super().__init__(message or f"Sample has no value for variable {variable}.")

    def __str__(self) -> str:
        return str(self.args[0])


class FileFormatError(AnnealWatchError, ValueError):
    """A text file could not be parsed."""

    def __init__(self, path: Path | str, line: int, reason: str):
        self.path = Path(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")


class TopologyError(AnnealWatchError, ValueError):
    """A hardware graph or region is invalid."""


class EmbeddingError(AnnealWatchError, ValueError):
    """An embedding is invalid for the model or hardware it is used with."""


class CapacityError(EmbeddingError):
    """The requested clique is larger than the construction supports."""

    def __init__(self, requested: int, max_k: int):
        self.requested = requested
        self.max_k = max_k
        super().__init__(
            f"Cannot embed K_{requested}: the clique construction supports at most K_{max_k} "
            "on this graph."
        )


class SeriesError(AnnealWatchError, ValueError):
    """A time series statistic was requested on unsuitable input."""


class NotReadyError(AnnealWatchError, RuntimeError):
    """The monitor cannot make a decision yet."""


class ConfigError(AnnealWatchError, ValueError):
    """An experiment configuration or registry lookup is invalid."""


class StageError(AnnealWatchError, RuntimeError):
    """An experiment stage failed; carries the stage name for diagnostics."""

    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")
