from __future__ import annotations

from typing import TYPE_CHECKING

from annealwatch.core import TopologyError
from annealwatch.topology.types import HardwareGraph, Region

if TYPE_CHECKING:
    from collections.abc import Iterable


def apply_defects(g: HardwareGraph, defects: Iterable[int]) -> HardwareGraph:
    """Remove defective qubits and every coupler touching them.

    The removed ids are added to the graph's defect record.

    Raises:
        TopologyError: If a defect id is not a working qubit of `g`.
    """
    removed = frozenset(defects)
    if not removed:
        return g
    unknown = removed - g.nodes
    if unknown:
        msg = f"Cannot mark qubit {min(unknown)} defective: it is not a working qubit."
        raise TopologyError(msg)

    return HardwareGraph(
        nodes=g.nodes - removed,
        couplers=frozenset((u, v) for u, v in g.couplers if u not in removed and v not in removed),
        kind=g.kind,
        defects=g.defects | removed,
    )


def idle_region(g: HardwareGraph, used: Iterable[int]) -> Region:
    """The subgraph induced on the qubits an embedding leaves unused.

    The region keeps only couplers with both endpoints idle, so it shares no coupler with the
    embedding's footprint. It may be disconnected.

    Raises:
        TopologyError: If `used` mentions unknown qubits or covers the whole graph.
    """
    used = frozenset(used)
    unknown = used - g.nodes
    if unknown:
        msg = f"Qubit {min(unknown)} is marked used but is not a working qubit."
        raise TopologyError(msg)
    idle = g.nodes - used
    if not idle:
        msg = "The embedding uses every qubit; there is no idle region for an indicator."
        raise TopologyError(msg)
    return Region.induced(g, idle)
