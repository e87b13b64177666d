from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from annealwatch.core import TopologyError

type Coupler = tuple[int, int]


@dataclass(frozen=True)
class ChimeraShape:
    """An m x m grid of K_{t,t} unit cells."""

    m: int
    t: int = 4

    def __str__(self) -> str:
        return f"chimera({self.m}, {self.t})"


@dataclass(frozen=True)
class HardwareGraph:
    """Physical qubits and couplers of a device, plus the qubits removed as defective.

    `kind` is a `ChimeraShape` for generated graphs and None for imported ones.
    """

    nodes: frozenset[int]
    couplers: frozenset[Coupler]
    kind: ChimeraShape | None = None
    defects: frozenset[int] = frozenset()

    def __post_init__(self):
        clash = self.nodes & self.defects
        if clash:
            msg = f"Qubit {min(clash)} is listed both as working and as defective."
            raise TopologyError(msg)
        for u, v in self.couplers:
            if u >= v:
                msg = f"Coupler ({u}, {v}) is not in canonical (min, max) order."
                raise TopologyError(msg)
            if u not in self.nodes or v not in self.nodes:
                msg = f"Coupler ({u}, {v}) references a qubit that is not a working node."
                raise TopologyError(msg)

    @classmethod
    def from_edges(
        cls,
        nodes: set[int] | frozenset[int],
        couplers: set[Coupler] | list[Coupler],
        kind: ChimeraShape | None = None,
        defects: set[int] | frozenset[int] = frozenset(),
    ) -> HardwareGraph:
        """Build a graph, canonicalizing coupler orientation."""
        canon = frozenset((min(u, v), max(u, v)) for u, v in couplers)
        return cls(frozenset(nodes), canon, kind, frozenset(defects))

    @cached_property
    def graph(self) -> nx.Graph:
        """The graph as a networkx view, built once."""
        g = nx.Graph()
        g.add_nodes_from(sorted(self.nodes))
        g.add_edges_from(sorted(self.couplers))
        return nx.freeze(g)

    def has_coupler(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.couplers

    def degree(self, q: int) -> int:
        return self.graph.degree(q)

    def describe(self) -> str:
        kind = str(self.kind) if self.kind else "imported"
        return (
            f"{kind}: {len(self.nodes)} qubits, {len(self.couplers)} couplers, "
            f"{len(self.defects)} defective"
        )


@dataclass(frozen=True)
class Region:
    """The subgraph induced on a subset of a hardware graph's qubits."""

    parent: HardwareGraph = field(repr=False)
    nodes: frozenset[int]
    couplers: frozenset[Coupler]

    @classmethod
    def induced(cls, parent: HardwareGraph, nodes: frozenset[int] | set[int]) -> Region:
        nodes = frozenset(nodes)
        couplers = frozenset((u, v) for u, v in parent.couplers if u in nodes and v in nodes)
        return cls(parent, nodes, couplers)

    def components(self) -> list[set[int]]:
        """Connected components of the region (it need not be connected)."""
        return [set(c) for c in nx.connected_components(self.parent.graph.subgraph(self.nodes))]
