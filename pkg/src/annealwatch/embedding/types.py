from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from types import MappingProxyType
from typing import TYPE_CHECKING

from annealwatch.core import EmbeddingError, plural
from annealwatch.embedding.strength import utc_chain_strength

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

    from annealwatch.qubo import QuboModel
    from annealwatch.topology import HardwareGraph


@dataclass(frozen=True)
class Embedding:
    """Chains of physical qubits standing in for logical variables on one hardware graph.

    Chains are ordered tuples; the order is the one the construction or file produced and is kept
    so embeddings serialize reproducibly.
    """

    chains: Mapping[int, tuple[int, ...]]
    hardware: HardwareGraph = field(repr=False, compare=False)

    def __post_init__(self):
        frozen = {int(v): tuple(int(q) for q in chain) for v, chain in self.chains.items()}
        object.__setattr__(self, "chains", MappingProxyType(dict(sorted(frozen.items()))))

    @property
    def k(self) -> int:
        """Number of logical variables."""
        return len(self.chains)

    @cached_property
    def owner(self) -> Mapping[int, int]:
        """The logical variable each used qubit belongs to (the last one wins on overlap)."""
        return MappingProxyType({q: v for v, chain in self.chains.items() for q in chain})

    def footprint(self) -> frozenset[int]:
        """Every physical qubit used by some chain."""
        return frozenset(q for chain in self.chains.values() for q in chain)

    def max_chain_length(self) -> int:
        return max((len(c) for c in self.chains.values()), default=0)

    def extended(self, extra: Mapping[int, Sequence[int]]) -> Embedding:
        """Return an embedding with the chains of `extra` added.

        Raises:
            EmbeddingError: If a logical id in `extra` already has a chain.
        """
        clash = self.chains.keys() & extra.keys()
        if clash:
            msg = f"Logical variable {min(clash)} already has a chain."
            raise EmbeddingError(msg)
        chains = dict(self.chains)
        chains.update({v: tuple(c) for v, c in extra.items()})
        return Embedding(chains, self.hardware)

    def relabeled(self, offset: int) -> Embedding:
        """Return the same chains with every logical id shifted by `offset`."""
        return Embedding({v + offset: c for v, c in self.chains.items()}, self.hardware)

    @staticmethod
    def merge(*embeddings: Embedding) -> Embedding:
        """Combine embeddings on one hardware graph whose logical ids are already disjoint.

        Raises:
            EmbeddingError: If no embedding is given or two of them share a logical id.
        """
        if not embeddings:
            msg = "Nothing to merge."
            raise EmbeddingError(msg)
        merged = embeddings[0]
        for other in embeddings[1:]:
            merged = merged.extended(other.chains)
        return merged


class ViolationKind(StrEnum):
    EMPTY_CHAIN = "empty_chain"
    UNKNOWN_QUBIT = "unknown_qubit"
    DISCONNECTED_CHAIN = "disconnected_chain"
    OVERLAP = "overlap"
    MISSING_CHAIN = "missing_chain"
    MISSING_COUPLER = "missing_coupler"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: str
    variables: tuple[int, ...] = ()


@dataclass(frozen=True)
class EmbeddingReport:
    """Every problem `validate_embedding` found. An empty report means the embedding is valid."""

    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def of_kind(self, kind: ViolationKind) -> list[Violation]:
        return [v for v in self.violations if v.kind is kind]

    def raise_if_invalid(self) -> None:
        """Raise an `EmbeddingError` summarizing the first few violations."""
        if self.valid:
            return
        count = len(self.violations)
        shown = "; ".join(v.detail for v in self.violations[:3])
        more = f" (and {count - 3} more)" if count > 3 else ""
        msg = f"Embedding has {plural('violation', count, with_count=True)}: {shown}{more}"
        raise EmbeddingError(msg)


class ChainMode(StrEnum):
    FIXED = "fixed"
    UTC = "utc"


@dataclass(frozen=True)
class ChainStrengthPolicy:
    """How the chain coupling magnitude is chosen.

    `fixed` uses `value` as the strength; `utc` uses uniform torque compensation with `value` as
    the prefactor.
    """

    mode: ChainMode = ChainMode.UTC
    value: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            msg = f"Chain strength {self.mode} value must be positive, got {self.value}."
            raise EmbeddingError(msg)

    @classmethod
    def fixed(cls, value: float) -> ChainStrengthPolicy:
        return cls(ChainMode.FIXED, value)

    @classmethod
    def utc(cls, prefactor: float = 1.0) -> ChainStrengthPolicy:
        return cls(ChainMode.UTC, prefactor)

    def resolve(self, model: QuboModel) -> float:
        """The chain strength this policy gives for `model`."""
        if self.mode is ChainMode.FIXED:
            return self.value
        return utc_chain_strength(model, self.value)
