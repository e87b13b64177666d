"""Assembling the device program of an experiment.

Problem variables are numbered 0..n-1 per problem and placed side by side: problem i is shifted
past the variables of problems 0..i-1. The indicator is generated on the physical idle qubits,
then renumbered past the last problem variable and given one single-qubit chain per qubit. The
combined logical program is embedded, chained, and autoscaled into the hardware program that the
backend samples; the unscaled logical parts are kept to evaluate energies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from annealwatch.core import EmbeddingError, Stream, plural, substream
from annealwatch.embedding import (
    Embedding,
    chimera_clique_embedding,
    embed_qubo,
    load_embedding,
    unembed_states,
    validate_embedding,
)
from annealwatch.log import WatchLog
from annealwatch.problems import EncodedProblem, IndicatorSpec, encode, gen_er_graph, gen_indicator
from annealwatch.problems import load_graph as load_problem_graph
from annealwatch.qubo import CombinedProgram, QuboModel, autoscale, combine_with_indicator, energies
from annealwatch.topology import HardwareGraph, apply_defects, chimera, idle_region, import_graph

if TYPE_CHECKING:
    from collections.abc import Sequence

    from annealwatch.experiment.config import (
        EmbeddingConfig,
        ExperimentConfig,
        ProblemConfig,
        TopologyConfig,
    )
    from annealwatch.sampler import SampleBatch

logger = WatchLog.get_logger(__name__)


@dataclass(frozen=True, eq=False)
class DeviceProgram:
    """Everything needed to sample one combined program and score its reads.

    Attributes:
        problems: The encoded problems, in layout order.
        offsets: Logical id of each problem's variable 0.
        logical_problems: Each problem's QUBO, renumbered to its logical ids.
        indicator: The indicator QUBO on its logical ids, unscaled.
        indicator_qubits: Physical qubit of each indicator variable, in logical id order.
        embedding: Chains of every logical variable, indicator included.
        combined: The logical program, problems plus the weighted indicator.
        chain_strength: The resolved chain strength.
        hardware: The autoscaled hardware-level program handed to the backend.
        autoscale_factor: Factor `autoscale` applied.
    """

    problems: tuple[EncodedProblem, ...]
    offsets: tuple[int, ...]
    logical_problems: tuple[QuboModel, ...] = field(repr=False)
    indicator: QuboModel = field(repr=False)
    indicator_qubits: tuple[int, ...]
    embedding: Embedding = field(repr=False)
    combined: CombinedProgram = field(repr=False)
    chain_strength: float
    hardware: QuboModel = field(repr=False)
    autoscale_factor: float

    def problem_variables(self) -> tuple[int, ...]:
        return tuple(v for model in self.logical_problems for v in sorted(model.variables))

    def indicator_hardware_terms(self) -> dict[tuple[int, int], float]:
        """The indicator's coefficients as the device sees them, keyed by physical qubits."""
        terms: dict[tuple[int, int], float] = {}
        for q in self.indicator_qubits:
            terms[q, q] = self.hardware.linear.get(q, 0.0)
        qubits = set(self.indicator_qubits)
        for (u, v), bias in self.hardware.quadratic.items():
            if u in qubits and v in qubits:
                terms[u, v] = bias
        return terms

    def score(self, batch: SampleBatch, seed: int) -> CallScores:
        """Decode a batch and average the energies of each part.

        Problem energies include the encoding's constant offset (nonzero for vertex cover), so they
        are objective values. Chain ties are broken with the stream (seed, call index).
        """
        rng = substream(seed, Stream.TIE_BREAK, batch.call_index)
        decoded, logical, broken = unembed_states(
            batch.states, batch.variables, self.embedding, rng
        )
        problem_reads = np.column_stack([
            energies(model, decoded, logical) + encoded.offset
            for model, encoded in zip(self.logical_problems, self.problems, strict=True)
        ])
        indicator_reads = energies(self.indicator, decoded, logical)

        # Indicator chains are single qubits and never break.
        broken_problem = broken * (len(logical) / len(self.problem_variables()))
        return CallScores(
            problem=tuple(float(m) for m in problem_reads.mean(axis=0)),
            indicator=float(indicator_reads.mean()),
            broken=float(broken_problem.mean()),
            problem_reads=problem_reads,
            indicator_reads=indicator_reads,
        )


@dataclass(frozen=True, eq=False)
class CallScores:
    """Per-call means of each problem's and the indicator's energies, plus per-read detail."""

    problem: tuple[float, ...]
    indicator: float
    broken: float
    problem_reads: np.ndarray = field(repr=False)
    indicator_reads: np.ndarray = field(repr=False)


def build_hardware(cfg: TopologyConfig) -> HardwareGraph:
    """The configured hardware graph with its defective qubits removed."""
    if cfg.kind == "file" and cfg.path:
        graph = import_graph(cfg.path)
    else:
        graph = chimera(cfg.m, cfg.t)
    if cfg.defects:
        graph = apply_defects(graph, cfg.defects)
    logger.info("Hardware graph: %s.", graph.describe())
    return graph


def build_problem(cfg: ProblemConfig) -> EncodedProblem:
    """Generate or load a graph and encode it."""
    if cfg.path:
        graph = load_problem_graph(cfg.path)
    else:
        graph = gen_er_graph(cfg.n, cfg.density, cfg.seed)
    return encode(cfg.kind, graph, cfg.weights)


def quadrant_origins(g: HardwareGraph, count: int) -> list[tuple[int, int]]:
    """Origins of up to four disjoint cliques, one per quadrant of a Chimera chip."""
    if g.kind is None:
        msg = "Quadrant placement needs a generated Chimera graph; set embedding.origins."
        raise EmbeddingError(msg)
    h = g.kind.m // 2
    cells = [(0, 0), (0, h), (h, 0), (h, h)]
    if count > len(cells):
        msg = f"Quadrant placement fits at most 4 problems, got {count}."
        raise EmbeddingError(msg)
    return cells[:count]


def place_problems(
    g: HardwareGraph, problems: Sequence[EncodedProblem], cfg: EmbeddingConfig
) -> list[Embedding]:
    """One embedding per problem, covering exactly its variables 0..n-1.

    A single problem uses a K_k clique at `cfg.origin` (k defaults to the problem size) or the
    embedding file. Several problems get cliques of their own size at `cfg.origins`, or at the
    quadrant origins.

    Raises:
        EmbeddingError: If the embeddings overlap or a chain is missing.
        CapacityError: If a clique does not fit.
    """
    if len(problems) == 1:
        n = problems[0].graph.n
        if cfg.path:
            base = load_embedding(cfg.path, g)
        else:
            base = chimera_clique_embedding(g, max(cfg.k or n, n), cfg.origin)
        missing = [v for v in range(n) if v not in base.chains]
        if missing:
            msg = f"Embedding has no chain for problem variable {missing[0]}."
            raise EmbeddingError(msg)
        return [Embedding({v: base.chains[v] for v in range(n)}, g)]

    if cfg.path:
        msg = "An embedding file holds one problem; multi-problem runs build their own cliques."
        raise EmbeddingError(msg)
    origins = list(cfg.origins) if cfg.origins else quadrant_origins(g, len(problems))
    if len(origins) < len(problems):
        msg = f"Got {len(problems)} problems but only {len(origins)} origins."
        raise EmbeddingError(msg)
    placed = [
        chimera_clique_embedding(g, p.graph.n, origin)
        for p, origin in zip(problems, origins, strict=False)
    ]
    used: set[int] = set()
    for i, e in enumerate(placed):
        shared = used & e.footprint()
        if shared:
            msg = (
                f"Embedding of problem {i} overlaps earlier problems on "
                f"{plural('qubit', len(shared), with_count=True)}, e.g. {min(shared)}."
            )
            raise EmbeddingError(msg)
        used |= e.footprint()
    return placed


def assemble_program(
    g: HardwareGraph,
    problems: Sequence[EncodedProblem],
    placements: Sequence[Embedding],
    cfg: ExperimentConfig,
) -> DeviceProgram:
    """Lay the problems out side by side, plant the indicator on the idle qubits, and build the
    autoscaled hardware program.

    Raises:
        EmbeddingError: If the combined embedding is invalid.
        TopologyError: If no qubit is left idle.
        ModelError: If the indicator or a problem has no nonzero coefficient.
    """
    offsets: list[int] = []
    logical: list[QuboModel] = []
    shifted: list[Embedding] = []
    next_id = 0
    for problem, e in zip(problems, placements, strict=True):
        offsets.append(next_id)
        mapping = {v: v + next_id for v in problem.model.variables}
        logical.append(problem.model.relabeled(mapping))
        shifted.append(e.relabeled(next_id))
        next_id += problem.graph.n
    problem_embedding = Embedding.merge(*shifted)
    problem_model = QuboModel.union(*logical)

    region = idle_region(g, problem_embedding.footprint())
    physical = gen_indicator(IndicatorSpec(cfg.indicator.kind, region, cfg.indicator.seed))
    qubits = tuple(sorted(physical.variables))
    indicator = physical.relabeled({q: next_id + i for i, q in enumerate(qubits)})
    embedding = problem_embedding.extended({next_id + i: (q,) for i, q in enumerate(qubits)})

    logical_edges = list(problem_model.quadratic) + list(indicator.quadratic)
    validate_embedding(embedding, logical_edges).raise_if_invalid()

    combined = combine_with_indicator(problem_model, indicator)
    strength = cfg.chain_strength.policy.resolve(combined.combined)
    embedded = embed_qubo(combined.combined, embedding, cfg.chain_strength.policy, strength)
    hardware, factor = autoscale(embedded)

    logger.info(
        "Program: %s on %s, indicator on %s; C = %.4g, chain strength %.4g.",
        plural("problem variable", problem_model.num_variables, with_count=True),
        plural("qubit", len(problem_embedding.footprint()), with_count=True),
        plural("idle qubit", len(qubits), with_count=True),
        combined.scale_constant,
        strength,
    )
    return DeviceProgram(
        problems=tuple(problems),
        offsets=tuple(offsets),
        logical_problems=tuple(logical),
        indicator=indicator,
        indicator_qubits=qubits,
        embedding=embedding,
        combined=combined,
        chain_strength=strength,
        hardware=hardware,
        autoscale_factor=factor,
    )
