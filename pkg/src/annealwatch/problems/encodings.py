"""QUBO encodings of maximum clique and minimum vertex cover."""

from __future__ import annotations

from annealwatch.core import ModelError
from annealwatch.problems.types import EncodedProblem, GraphInstance, PenaltyWeights, ProblemKind
from annealwatch.qubo import QuboModel


def mc_qubo(g: GraphInstance, w: PenaltyWeights) -> QuboModel:
    """Maximum clique: H = -A * sum_v x_v + B * sum_{(u,v) not in E} x_u x_v.

    Every non-edge is penalized, so with A < B the minimizers are exactly the maximum cliques.

    Raises:
        ModelError: If A >= B.
    """
    if not w.a < w.b:
        msg = f"Maximum clique needs A < B, got A={w.a}, B={w.b}."
        raise ModelError(msg)
    return QuboModel.from_terms(
        dict.fromkeys(range(g.n), -w.a),
        {pair: w.b for pair in g.complement_edges()},
        variables=range(g.n),
    )


def mvc_qubo(g: GraphInstance, w: PenaltyWeights) -> tuple[QuboModel, float]:
    """Minimum vertex cover: H = A * sum_{(u,v) in E} (1 - x_u)(1 - x_v) + B * sum_v x_v.

    Expanded, each vertex gets B - A * deg(v), each edge gets +A, and the constant A * |E| is
    returned separately. With 0 < B < A the minimizers are exactly the minimum vertex covers.

    Returns:
        The model and the constant offset, so H(x) = energy(model, x) + offset.

    Raises:
        ModelError: If B >= A.
    """
    if not w.b < w.a:
        msg = f"Minimum vertex cover needs B < A, got A={w.a}, B={w.b}."
        raise ModelError(msg)

    linear = dict.fromkeys(range(g.n), w.b)
    for u, v in g.edges:
        linear[u] -= w.a
        linear[v] -= w.a
    model = QuboModel.from_terms(linear, dict.fromkeys(g.edges, w.a), variables=range(g.n))
    return model, w.a * len(g.edges)


def encode(kind: ProblemKind, g: GraphInstance, w: PenaltyWeights | None = None) -> EncodedProblem:
    """Encode `g` as the given problem kind, using the default weights if none are given."""
    w = w or PenaltyWeights.default_for(kind)
    if kind is ProblemKind.MC:
        return EncodedProblem(kind, g, w, mc_qubo(g, w))
    model, offset = mvc_qubo(g, w)
    return EncodedProblem(kind, g, w, model, offset)
