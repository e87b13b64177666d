"""Mapping logical models onto chains and decoding hardware samples back."""

from __future__ import annotations

from typing import TYPE_CHECKING

import networkx as nx
import numpy as np

from annealwatch.core import EmbeddingError, EvaluationError, plural
from annealwatch.embedding.validate import interchain_couplers
from annealwatch.log import WatchLog
from annealwatch.qubo import Frame, QuboModel, Sample

if TYPE_CHECKING:
    from collections.abc import Sequence

    from annealwatch.embedding.types import ChainStrengthPolicy, Embedding

logger = WatchLog.get_logger(__name__)


def embed_qubo(
    model: QuboModel,
    e: Embedding,
    policy: ChainStrengthPolicy,
    chain_strength: float | None = None,
) -> QuboModel:
    """Spread a logical QUBO over its chains and add chain couplings.

    Each linear coefficient is split equally over the qubits of its chain and each quadratic
    coefficient equally over every physical coupler between the two chains. Chain qubits are then
    tied along a breadth-first spanning tree of the chain by the Ising coupling -s * s_u * s_v,
    rewritten in the QUBO frame without its constant (-4s on the coupler, +2s on each end). A
    chain-consistent hardware state therefore has exactly the energy of its logical state.

    Args:
        model: A QUBO-frame model whose variables all have chains.
        e: The embedding.
        policy: How to choose the chain strength s.
        chain_strength: An already resolved strength, which overrides `policy`.

    Raises:
        EmbeddingError: If a variable has no chain, a chain is disconnected, a logical edge has no
                        coupler between its chains, or the model is in the Ising frame.
    """
    if model.frame is not Frame.QUBO:
        msg = "Only QUBO-frame models can be embedded; convert Ising models first."
        raise EmbeddingError(msg)
    unchained = sorted(model.variables - e.chains.keys())
    if unchained:
        msg = f"Logical variable {unchained[0]} has no chain in the embedding."
        raise EmbeddingError(msg)

    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}
    qubits: set[int] = set()

    for v in sorted(model.variables):
        chain = e.chains[v]
        if not chain:
            msg = f"Chain for variable {v} is empty."
            raise EmbeddingError(msg)
        qubits.update(chain)
        share = model.linear.get(v, 0.0) / len(chain)
        for q in chain:
            linear[q] = linear.get(q, 0.0) + share

    for (u, v), bias in model.quadratic.items():
        couplers = interchain_couplers(e, u, v)
        if not couplers:
            msg = f"No physical coupler joins the chains of logical edge ({u}, {v})."
            raise EmbeddingError(msg)
        share = bias / len(couplers)
        for p, q in couplers:
            key = (min(p, q), max(p, q))
            quadratic[key] = quadratic.get(key, 0.0) + share

    strength = chain_strength if chain_strength is not None else policy.resolve(model)
    graph = e.hardware.graph
    for v in sorted(model.variables):
        chain = e.chains[v]
        if len(chain) == 1:
            continue
        sub = graph.subgraph(chain)
        if not nx.is_connected(sub):
            msg = f"Chain for variable {v} is not connected on the hardware graph."
            raise EmbeddingError(msg)
        for p, q in nx.bfs_edges(sub, chain[0], sort_neighbors=sorted):
            key = (min(p, q), max(p, q))
            quadratic[key] = quadratic.get(key, 0.0) - 4.0 * strength
            linear[p] += 2.0 * strength
            linear[q] += 2.0 * strength

    logger.debug(
        "Embedded %s onto %s with chain strength %.4g.",
        plural("logical variable", model.num_variables, with_count=True),
        plural("qubit", len(qubits), with_count=True),
        strength,
    )
    return QuboModel.from_terms(linear, quadratic, variables=qubits)


def unembed(
    hardware_sample: Sample,
    e: Embedding,
    rng: np.random.Generator,
    variables: Sequence[int] | None = None,
) -> tuple[Sample, float]:
    """Decode one hardware sample by majority vote per chain.

    Tied chains are settled by a coin flip from `rng`, drawn for tied chains in ascending logical
    id order, so the same generator state always gives the same decision.

    Args:
        hardware_sample: QUBO-frame values for at least every chain qubit.
        e: The embedding.
        rng: Source of tie-break coin flips.
        variables: Logical variables to decode (default: every chain).

    Returns:
        The logical sample and the fraction of decoded chains whose qubits disagree.

    Raises:
        EvaluationError: If a chain qubit has no value in the sample.
    """
    order = sorted(e.chains) if variables is None else sorted(variables)
    values = hardware_sample.to_frame(Frame.QUBO).assignment
    assignment: dict[int, int] = {}
    broken = 0
    for v in order:
        chain = e.chains[v]
        ones = 0
        for q in chain:
            if q not in values:
                raise EvaluationError(q, f"Hardware sample has no value for chain qubit {q}.")
            ones += values[q]
        if 0 < ones < len(chain):
            broken += 1
        if 2 * ones == len(chain):
            assignment[v] = int(rng.random() < 0.5)
        else:
            assignment[v] = int(2 * ones > len(chain))
    return Sample(assignment), broken / len(order) if order else 0.0


def unembed_states(
    states: np.ndarray,
    order: Sequence[int],
    e: Embedding,
    rng: np.random.Generator,
    variables: Sequence[int] | None = None,
) -> tuple[np.ndarray, tuple[int, ...], np.ndarray]:
    """Decode a (reads, qubits) array of QUBO-frame states by majority vote.

    Decisions match `unembed` applied to each row in turn with the same generator: tie coin flips
    are drawn row by row, in ascending logical id order within a row.

    Returns:
        The (reads, variables) logical states, the logical id of each column, and the broken-chain
        fraction of each read.

    Raises:
        EvaluationError: If a chain qubit has no column.
    """
    logical = tuple(sorted(e.chains) if variables is None else sorted(variables))
    column = {q: i for i, q in enumerate(order)}
    x = np.asarray(states, dtype=np.int8)
    if x.ndim == 1:
        x = x[None, :]

    ones = np.empty((x.shape[0], len(logical)), dtype=np.int64)
    lengths = np.empty(len(logical), dtype=np.int64)
    for j, v in enumerate(logical):
        chain = e.chains[v]
        for q in chain:
            if q not in column:
                raise EvaluationError(q, f"Hardware states have no column for chain qubit {q}.")
        idx = np.fromiter((column[q] for q in chain), dtype=np.intp, count=len(chain))
        ones[:, j] = x[:, idx].sum(axis=1)
        lengths[j] = len(chain)

    decoded = (2 * ones > lengths).astype(np.int8)
    ties = 2 * ones == lengths
    if ties.any():
        decoded[ties] = (rng.random(int(ties.sum())) < 0.5).astype(np.int8)
    broken = ((ones > 0) & (ones < lengths)).mean(axis=1) if logical else np.zeros(x.shape[0])
    return decoded, logical, broken
