"""Random performance-indicator QUBOs on idle qubits."""

from __future__ import annotations

from typing import TYPE_CHECKING

from annealwatch.core import ModelError, Stream, plural, substream
from annealwatch.problems.types import IndicatorKind, IndicatorSpec
from annealwatch.qubo import QuboModel

if TYPE_CHECKING:
    from numpy.random import Generator


def gen_indicator(spec: IndicatorSpec) -> QuboModel:
    """Draw one linear coefficient per region qubit and one quadratic per region coupler.

    Variables are the physical qubit ids of the region. Every coefficient has its own random
    stream keyed by (seed, qubit) or (seed, coupler), so a qubit's weight is the same whatever
    else the region contains, and the model is a pure function of (kind, region, seed).

    Raises:
        ModelError: If the region has no qubits or no couplers.
    """
    region = spec.region
    if not region.nodes:
        msg = "Cannot plant an indicator on an empty region."
        raise ModelError(msg)
    if not region.couplers:
        msg = (
            f"The idle region has {plural('qubit', len(region.nodes), with_count=True)} "
            "but no couplers, so an indicator would have no quadratic terms."
        )
        raise ModelError(msg)

    linear = {
        q: _draw(spec.kind, substream(spec.seed, Stream.INDICATOR, q, q)) for q in region.nodes
    }
    quadratic = {
        (u, v): _draw(spec.kind, substream(spec.seed, Stream.INDICATOR, u, v))
        for u, v in region.couplers
    }
    return QuboModel.from_terms(linear, quadratic, variables=region.nodes)


def _draw(kind: IndicatorKind, rng: Generator) -> float:
    if kind is IndicatorKind.PI2:
        return 1.0 if rng.random() < 0.5 else -1.0
    while True:
        # uniform() covers [-1, 1); -1 itself is redrawn to keep the interval open
        value = float(rng.uniform(-1.0, 1.0))
        if value != -1.0:
            return value
