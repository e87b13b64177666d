from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import StrEnum
from typing import TYPE_CHECKING, Any

import numpy as np

from annealwatch.core import ConfigError

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping


@dataclass
class BurnInStore:
    """History of per-call indicator energies, with running bounds.

    Gate decisions need at least `burn_in` stored values. With a `cap`, only the most recent `cap`
    values are kept and the bounds follow the retained window. The store has a single writer;
    readers may inspect it between updates.
    """

    burn_in: int
    cap: int | None = None
    history: deque[float] = field(init=False, repr=False)
    low: float = field(init=False, default=float("inf"))
    high: float = field(init=False, default=float("-inf"))

    def __post_init__(self):
        if self.burn_in < 1:
            msg = f"Burn-in length must be at least 1, got {self.burn_in}."
            raise ConfigError(msg)
        if self.cap is not None and self.cap < self.burn_in:
            msg = f"History cap {self.cap} is shorter than the burn-in length {self.burn_in}."
            raise ConfigError(msg)
        self.history = deque(maxlen=self.cap)

    def __len__(self) -> int:
        return len(self.history)

    @property
    def ready(self) -> bool:
        return len(self.history) >= self.burn_in

    @property
    def degenerate(self) -> bool:
        """True when the history cannot define a normalization range."""
        return not self.history or self.high <= self.low

    def append(self, value: float) -> None:
        """Store one value and update the bounds. Prefer `observe` from outside the package."""
        full = self.cap is not None and len(self.history) == self.cap
        evicted = self.history[0] if full else None
        self.history.append(float(value))
        if evicted is not None and evicted in {self.low, self.high}:
            self.low, self.high = min(self.history), max(self.history)
        else:
            self.low, self.high = min(self.low, value), max(self.high, value)

    def as_array(self) -> np.ndarray:
        return np.fromiter(self.history, dtype=np.float64, count=len(self.history))

    def to_dict(self) -> dict[str, Any]:
        return {"burn_in": self.burn_in, "cap": self.cap, "history": list(self.history)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> BurnInStore:
        store = cls(int(data["burn_in"]), None if data.get("cap") is None else int(data["cap"]))
        store.extend(data.get("history", ()))
        return store

    def extend(self, values: Iterable[float]) -> None:
        for v in values:
            self.append(float(v))


@dataclass(frozen=True)
class GateDecision:
    """Verdict on one call's problem samples.

    `accept` is exactly `normalized_e < threshold`. A rejected call means the problem should be
    resubmitted later.
    """

    accept: bool
    normalized_e: float
    percentile: float
    threshold: float


class GatePhase(StrEnum):
    BURN_IN = "burn-in"
    GATE = "gate"


@dataclass(frozen=True)
class GateRecord:
    """One call's row of the gate log. Burn-in rows carry no decision."""

    call: int
    phase: GatePhase
    problem_energy: float
    indicator_energy: float
    decision: GateDecision | None = None


@dataclass(frozen=True)
class GateLog:
    """The outcome of running the two-phase procedure over a whole run."""

    records: tuple[GateRecord, ...]
    threshold: float
    burn_in: int

    def gated(self) -> tuple[GateRecord, ...]:
        return tuple(r for r in self.records if r.decision is not None)

    def normalized(self) -> np.ndarray:
        """Normalized indicator energy of every gated call, in call order."""
        return np.array([r.decision.normalized_e for r in self.gated() if r.decision])

    def problem_energies(self, accepted: bool | None = None) -> np.ndarray:
        """Problem energies of gated calls, optionally only the accepted or rejected ones."""
        return np.array([
            r.problem_energy
            for r in self.gated()
            if r.decision and (accepted is None or r.decision.accept == accepted)
        ])

    @property
    def acceptance_rate(self) -> float:
        gated = self.gated()
        if not gated:
            return 0.0
        return sum(1 for r in gated if r.decision and r.decision.accept) / len(gated)


@dataclass(frozen=True, eq=False)
class StratifiedHistogram:
    """Problem energies split by the normalized indicator energy of their call.

    `low_set` holds calls with e <= low cut, `high_set` calls with e >= high cut; the middle band
    is dropped, so the sets never share a call.
    """

    low_set: np.ndarray
    high_set: np.ndarray
    cuts: tuple[float, float] = (0.2, 0.8)

    def edges(self, bins: int = 20) -> np.ndarray:
        """Bin edges shared by both sets, spanning their combined range."""
        pooled = np.concatenate([self.low_set, self.high_set])
        if pooled.size == 0:
            return np.linspace(0.0, 1.0, bins + 1)
        return np.histogram_bin_edges(pooled, bins=bins)

    def counts(self, bins: int = 20) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Return (edges, low counts, high counts) over the shared edges."""
        edges = self.edges(bins)
        low, _ = np.histogram(self.low_set, bins=edges)
        high, _ = np.histogram(self.high_set, bins=edges)
        return edges, low, high

    def means(self) -> tuple[float | None, float | None]:
        def mean(a: np.ndarray) -> float | None:
            return float(a.mean()) if a.size else None

        return mean(self.low_set), mean(self.high_set)
