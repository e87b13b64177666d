from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from enum import IntEnum
from types import MappingProxyType
from typing import TYPE_CHECKING, Any

import numpy as np

from annealwatch.core import SeriesError

if TYPE_CHECKING:
    from collections.abc import Mapping


@dataclass(frozen=True, eq=False)
class EnergySeries:
    """Time-ordered per-call mean energies.

    The values are stored as a read-only float64 array; operations return new series.
    """

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        if values.size == 0:
            msg = f"Series '{self.label}' is empty."
            raise SeriesError(msg)
        if not np.all(np.isfinite(values)):
            msg = f"Series '{self.label}' contains non-finite values."
            raise SeriesError(msg)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)

    def relabeled(self, label: str) -> EnergySeries:
        return EnergySeries(self.values, label)

    def equals(self, other: EnergySeries, tol: float = 0.0) -> bool:
        """Same length and values within `tol` of each other."""
        if len(self) != len(other):
            return False
        return bool(np.all(np.abs(self.values - other.values) <= tol))


class QualityBin(IntEnum):
    """Quartile classes of a normalized energy: lower energy means better solutions.

    Bins are half-open, [0, 0.25) best, [0.25, 0.5) good, [0.5, 0.75) bad, with 1.0 falling into
    worst, [0.75, 1].
    """

    BEST = 0
    GOOD = 1
    BAD = 2
    WORST = 3


@dataclass(frozen=True)
class StatReport:
    """Summary statistics of one analysis. Any statistic that was not computed is None.

    `extra` holds further named statistics (per-series ADF results, sizes, windows) so the report
    still serializes as one flat key-value document.
    """

    pearson: float | None = None
    rmsd: float | None = None
    bin_agreement: float | None = None
    adf_stat: float | None = None
    adf_p: float | None = None
    ks_stat: float | None = None
    ks_p: float | None = None
    extra: Mapping[str, float | int | None] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("bin_agreement", "adf_p", "ks_p", "ks_stat"):
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                msg = f"{name} must lie in [0, 1], got {value}."
                raise SeriesError(msg)
        if self.pearson is not None and not -1.0 <= self.pearson <= 1.0:
            msg = f"pearson must lie in [-1, 1], got {self.pearson}."
            raise SeriesError(msg)
        object.__setattr__(self, "extra", MappingProxyType(dict(sorted(self.extra.items()))))

    def to_dict(self) -> dict[str, Any]:
        """Flat mapping of every statistic, with `extra` entries at top level."""
        data: dict[str, Any] = {f.name: getattr(self, f.name) for f in fields(self)}
        del data["extra"]
        data.update(self.extra)
        return {k: _plain(v) for k, v in sorted(data.items())}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> StatReport:
        known = {f.name for f in fields(cls)} - {"extra"}
        core = {k: v for k, v in data.items() if k in known}
        extra = {k: v for k, v in data.items() if k not in known}
        return cls(**core, extra=extra)

    def with_values(self, **values: Any) -> StatReport:
        """Return a copy with the given statistics set; unknown names go to `extra`."""
        data = self.to_dict()
        data.update(values)
        return StatReport.from_dict(data)


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value
