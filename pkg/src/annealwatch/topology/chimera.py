"""Chimera hardware graphs.

Qubit (row, col, side, k) of chimera(m, t) has linear index

    2 * t * (m * row + col) + t * side + k

where side 0 is the vertical half of the cell and side 1 the horizontal half. Inside a cell every
vertical qubit couples to every horizontal qubit; vertical qubit k couples to vertical qubit k of
the cell below, horizontal qubit k to horizontal qubit k of the cell to the right.
"""

from __future__ import annotations

from annealwatch.core import TopologyError
from annealwatch.topology.types import ChimeraShape, Coupler, HardwareGraph

VERTICAL = 0
HORIZONTAL = 1


def chimera_index(row: int, col: int, side: int, k: int, m: int, t: int = 4) -> int:
    """Linear index of a qubit from its chimera coordinates."""
    return 2 * t * (m * row + col) + t * side + k


def chimera_coordinates(q: int, m: int, t: int = 4) -> tuple[int, int, int, int]:
    """Chimera coordinates (row, col, side, k) of a linear qubit index."""
    cell, offset = divmod(q, 2 * t)
    row, col = divmod(cell, m)
    side, k = divmod(offset, t)
    return row, col, side, k


def chimera(m: int, t: int = 4) -> HardwareGraph:
    """Build the defect-free chimera(m, t) graph.

    It has 2*t*m^2 qubits and t^2*m^2 + 2*t*m*(m-1) couplers.

    Raises:
        TopologyError: If m or t is not positive.
    """
    if m < 1 or t < 1:
        msg = f"Chimera dimensions must be positive, got m={m}, t={t}."
        raise TopologyError(msg)

    nodes = set(range(2 * t * m * m))
    couplers: set[Coupler] = set()
    for row in range(m):
        for col in range(m):
            for k in range(t):
                vq = chimera_index(row, col, VERTICAL, k, m, t)
                hq = chimera_index(row, col, HORIZONTAL, k, m, t)
                for kk in range(t):
                    couplers.add((vq, chimera_index(row, col, HORIZONTAL, kk, m, t)))
                if row + 1 < m:
                    couplers.add((vq, chimera_index(row + 1, col, VERTICAL, k, m, t)))
                if col + 1 < m:
                    couplers.add((hq, chimera_index(row, col + 1, HORIZONTAL, k, m, t)))

    return HardwareGraph.from_edges(nodes, couplers, kind=ChimeraShape(m, t))
