from __future__ import annotations

import math
from typing import TYPE_CHECKING

from annealwatch.core import EmbeddingError

if TYPE_CHECKING:
    from annealwatch.qubo import QuboModel


def utc_chain_strength(model: QuboModel, prefactor: float = 1.0) -> float:
    """Uniform torque compensation.

    Returns prefactor * rms(J) * sqrt(average degree), where rms(J) is the root mean square of the
    quadratic coefficients and the average degree is 2 * (quadratic terms) / (variables), counting
    variables without quadratic terms.

    Raises:
        EmbeddingError: If the model has no quadratic term or the prefactor is not positive.
    """
    if prefactor <= 0:
        msg = f"Chain strength prefactor must be positive, got {prefactor}."
        raise EmbeddingError(msg)
    if not model.quadratic:
        msg = "Uniform torque compensation needs at least one quadratic term."
        raise EmbeddingError(msg)

    num_terms = len(model.quadratic)
    rms = math.sqrt(sum(j * j for j in model.quadratic.values()) / num_terms)
    avg_degree = 2 * num_terms / model.num_variables
    return prefactor * rms * math.sqrt(avg_degree)
