from __future__ import annotations

from .errors import (
    AnnealWatchError,
    CapacityError,
    ConfigError,
    EmbeddingError,
    EvaluationError,
    FileFormatError,
    ModelError,
    NotReadyError,
    SeriesError,
    StageError,
    TopologyError,
)
from .rng import Stream, derive_seed, substream
from .singleton import Singleton
from .text import plural
