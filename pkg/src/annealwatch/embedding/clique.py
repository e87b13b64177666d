"""Deterministic clique embeddings on Chimera graphs.

Inside a square block of `ceil(k / t)` cells, logical variable `i = t * a + j` owns horizontal
qubit `j` of the cells in block row `a` up to the diagonal, then vertical qubit `j` of the cells in
block column `a` from the diagonal down. Two variables from block indices `a < b` meet in cell
`(b, a)`, where the vertical qubit of one couples to the horizontal qubit of the other; variables
of the same block meet in the diagonal cell. Every chain is a path of at most `m + 1` qubits.

Chain ends that no required coupler depends on are then pruned, so small cliques don't waste
qubits the indicator could use.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import TYPE_CHECKING

from annealwatch.core import CapacityError, EmbeddingError, plural
from annealwatch.embedding.types import Embedding
from annealwatch.log import WatchLog
from annealwatch.topology import HORIZONTAL, VERTICAL, chimera_index

if TYPE_CHECKING:
    from annealwatch.topology import HardwareGraph

logger = WatchLog.get_logger(__name__)


def clique_capacity(g: HardwareGraph, origin: tuple[int, int] = (0, 0)) -> int:
    """Largest k the construction can place on `g` with its block anchored at `origin`."""
    if g.kind is None:
        return 0
    m, t = g.kind.m, g.kind.t
    row, col = origin
    return t * max(0, min(m - row, m - col))


def chimera_clique_embedding(
    g: HardwareGraph, k: int, origin: tuple[int, int] = (0, 0)
) -> Embedding:
    """Embed the complete graph K_k into a Chimera graph.

    Args:
        g: A Chimera hardware graph. Defects are allowed only where no chain needs them.
        k: Clique size; logical variables are 0..k-1.
        origin: The (row, col) cell where the block of cells starts, so several cliques can share
                a chip.

    Raises:
        CapacityError: If k exceeds `t * (cells available from origin)`.
        EmbeddingError: If `g` is not a Chimera graph, k < 1, or a chain would need a defective
                        qubit (embed defective chips from a file instead).
    """
    if g.kind is None:
        msg = "The clique construction needs a generated Chimera graph; import an embedding."
        raise EmbeddingError(msg)
    if k < 1:
        msg = f"Clique size must be at least 1, got {k}."
        raise EmbeddingError(msg)
    max_k = clique_capacity(g, origin)
    if k > max_k:
        raise CapacityError(k, max_k)

    m, t = g.kind.m, g.kind.t
    r0, c0 = origin
    size = math.ceil(k / t)

    chains: dict[int, list[int]] = {}
    for i in range(k):
        a, j = divmod(i, t)
        horizontals = [chimera_index(r0 + a, c0 + c, HORIZONTAL, j, m, t) for c in range(a + 1)]
        verticals = [chimera_index(r0 + r, c0 + a, VERTICAL, j, m, t) for r in range(a, size)]
        chains[i] = horizontals + verticals

    missing = {q for chain in chains.values() for q in chain} - g.nodes
    if missing:
        msg = (
            f"Clique chain needs qubit {min(missing)}, which is not a working qubit; "
            "embed defective chips from a file."
        )
        raise EmbeddingError(msg)

    _prune_chain_ends(g, chains)
    embedding = Embedding({v: tuple(c) for v, c in chains.items()}, g)
    logger.debug(
        "Embedded K_%s on %s, longest chain %s.",
        k,
        plural("qubit", len(embedding.footprint()), with_count=True),
        embedding.max_chain_length(),
    )
    return embedding


def _prune_chain_ends(g: HardwareGraph, chains: dict[int, list[int]]) -> None:
    """Drop chain end qubits while every pair of chains keeps at least one coupler.

    Chains are paths, so removing an end keeps them connected. Variables are visited in order and
    each chain's tail is tried before its head.
    """
    owner = {q: v for v, chain in chains.items() for q in chain}
    links: Counter[tuple[int, int]] = Counter()
    for u, v in g.couplers:
        cu, cv = owner.get(u), owner.get(v)
        if cu is not None and cv is not None and cu != cv:
            links[min(cu, cv), max(cu, cv)] += 1

    def removable(q: int, v: int) -> bool:
        lost: Counter[tuple[int, int]] = Counter()
        for n in g.graph.neighbors(q):
            other = owner.get(n)
            if other is not None and other != v:
                lost[min(v, other), max(v, other)] += 1
        return all(links[pair] > count for pair, count in lost.items())

    def remove(q: int, v: int) -> None:
        for n in g.graph.neighbors(q):
            other = owner.get(n)
            if other is not None and other != v:
                links[min(v, other), max(v, other)] -= 1
        del owner[q]

    for v, chain in chains.items():
        changed = True
        while changed and len(chain) > 1:
            changed = False
            for end in (-1, 0):
                q = chain[end]
                if removable(q, v):
                    remove(q, v)
                    chain.pop(end)
                    changed = True
                    break
