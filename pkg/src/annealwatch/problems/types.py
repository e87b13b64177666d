from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property
from typing import TYPE_CHECKING

import networkx as nx

from annealwatch.core import ModelError

if TYPE_CHECKING:
    from collections.abc import Iterable

    from annealwatch.qubo import QuboModel
    from annealwatch.topology import Region


class ProblemKind(StrEnum):
    """Graph problems with a QUBO encoding."""

    MC = "mc"
    MVC = "mvc"


class IndicatorKind(StrEnum):
    """Performance-indicator families.

    PI1 draws every coefficient uniformly from the open interval (-1, 1); PI2 draws -1 or +1 with
    equal probability.
    """

    PI1 = "pi1"
    PI2 = "pi2"


@dataclass(frozen=True)
class GraphInstance:
    """An undirected simple graph on vertices 0..n-1 with the parameters that generated it."""

    n: int
    edges: frozenset[tuple[int, int]]
    density: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            msg = f"A graph needs at least one vertex, got n={self.n}."
            raise ModelError(msg)
        for u, v in self.edges:
            if u >= v:
                msg = f"Edge ({u}, {v}) is a self-loop or not in (min, max) order."
                raise ModelError(msg)
            if v >= self.n or u < 0:
                msg = f"Edge ({u}, {v}) leaves the vertex range 0..{self.n - 1}."
                raise ModelError(msg)

    @classmethod
    def from_edges(
        cls, n: int, edges: Iterable[tuple[int, int]], density: float | None = None, seed: int = 0
    ) -> GraphInstance:
        """Build an instance from edges in any orientation; density defaults to the realized one."""
        canon = frozenset((min(u, v), max(u, v)) for u, v in edges)
        if density is None:
            pairs = n * (n - 1) // 2
            density = len(canon) / pairs if pairs else 0.0
        return cls(n, canon, density, seed)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(sorted(self.edges))
        return g

    def complement_edges(self) -> list[tuple[int, int]]:
        """Every vertex pair that is not an edge, in sorted order."""
        return [
            (u, v) for u in range(self.n) for v in range(u + 1, self.n) if (u, v) not in self.edges
        ]


@dataclass(frozen=True)
class PenaltyWeights:
    """Objective and penalty weights A and B of the MC and MVC encodings.

    MC needs 0 < A < B; MVC needs 0 < B < A. Which constraint applies is checked by the encoder.
    """

    a: float
    b: float

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            msg = f"Penalty weights must be positive, got A={self.a}, B={self.b}."
            raise ModelError(msg)

    @classmethod
    def default_for(cls, kind: ProblemKind) -> PenaltyWeights:
        """A=1, B=2 for maximum clique; A=2, B=1 for minimum vertex cover."""
        return cls(1.0, 2.0) if kind is ProblemKind.MC else cls(2.0, 1.0)


@dataclass(frozen=True)
class EncodedProblem:
    """A graph problem and its QUBO, with the constant the QUBO drops.

    The literal objective value of an assignment is `energy(model, x) + offset`.
    """

    kind: ProblemKind
    graph: GraphInstance = field(repr=False)
    weights: PenaltyWeights
    model: QuboModel = field(repr=False)
    offset: float = 0.0


@dataclass(frozen=True)
class IndicatorSpec:
    """What to plant on the idle region: the indicator family and its seed."""

    kind: IndicatorKind
    region: Region = field(repr=False)
    seed: int = 0
