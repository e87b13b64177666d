from __future__ import annotations

from typing import TYPE_CHECKING

import networkx as nx

from annealwatch.embedding.types import EmbeddingReport, Violation, ViolationKind

if TYPE_CHECKING:
    from collections.abc import Iterable

    from annealwatch.embedding.types import Embedding


def validate_embedding(
    e: Embedding, logical_edges: Iterable[tuple[int, int]], variables: Iterable[int] = ()
) -> EmbeddingReport:
    """Check an embedding against the logical interaction graph it must carry.

    Every violation is collected rather than raised: empty chains, qubits missing from the
    hardware, chains that are not connected, qubits shared between chains, logical variables
    without a chain, and logical edges with no physical coupler between their chains.

    Args:
        e: The embedding to check.
        logical_edges: Pairs of logical variables that must be joined by a coupler.
        variables: Extra logical variables that need a chain even without edges.
    """
    violations: list[Violation] = []
    hw = e.hardware
    seen: dict[int, int] = {}

    for v, chain in e.chains.items():
        if not chain:
            violations.append(Violation(ViolationKind.EMPTY_CHAIN, f"chain {v} is empty", (v,)))
            continue

        unknown = sorted(q for q in chain if q not in hw.nodes)
        for q in unknown:
            detail = f"chain {v} uses qubit {q}, which is not a working qubit"
            violations.append(Violation(ViolationKind.UNKNOWN_QUBIT, detail, (v,)))

        for q in chain:
            if q in seen and seen[q] != v:
                detail = f"qubit {q} belongs to both chain {seen[q]} and chain {v}"
                violations.append(Violation(ViolationKind.OVERLAP, detail, (seen[q], v)))
            else:
                seen[q] = v

        present = [q for q in chain if q in hw.nodes]
        if present and not nx.is_connected(hw.graph.subgraph(present)):
            pieces = nx.number_connected_components(hw.graph.subgraph(present))
            detail = f"chain {v} falls apart into {pieces} pieces"
            violations.append(Violation(ViolationKind.DISCONNECTED_CHAIN, detail, (v,)))

    edges = sorted({(min(u, v), max(u, v)) for u, v in logical_edges if u != v})
    needed = set(variables) | {x for edge in edges for x in edge}
    for v in sorted(needed - e.chains.keys()):
        detail = f"variable {v} has no chain"
        violations.append(Violation(ViolationKind.MISSING_CHAIN, detail, (v,)))

    for u, v in edges:
        if u not in e.chains or v not in e.chains:
            continue
        if not _chains_touch(e, u, v):
            detail = f"no coupler joins chain {u} and chain {v}"
            violations.append(Violation(ViolationKind.MISSING_COUPLER, detail, (u, v)))

    return EmbeddingReport(tuple(violations))


def _chains_touch(e: Embedding, u: int, v: int) -> bool:
    target = set(e.chains[v])
    graph = e.hardware.graph
    return any(n in target for q in e.chains[u] if q in graph for n in graph.neighbors(q))


def interchain_couplers(e: Embedding, u: int, v: int) -> list[tuple[int, int]]:
    """Physical couplers joining chain u to chain v, as (qubit of u, qubit of v), sorted."""
    target = set(e.chains[v])
    graph = e.hardware.graph
    pairs = [(q, n) for q in e.chains[u] if q in graph for n in graph.neighbors(q) if n in target]
    return sorted(pairs)
