"""Energy evaluation, frame conversion, scaling and the problem + indicator combination rule."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from annealwatch.core import EvaluationError, ModelError, plural
from annealwatch.qubo.types import CombinedProgram, Frame, QuboModel, Sample

if TYPE_CHECKING:
    from collections.abc import Sequence


def energy(model: QuboModel, sample: Sample) -> float:
    """Evaluate sum(h_i x_i) + sum_{i<j}(J_ij x_i x_j) for one sample.

    The sample must be in the model's frame. Extra variables in the sample are ignored.

    Raises:
        EvaluationError: If the sample has no value for one of the model's variables.
        ModelError: If the sample frame differs from the model frame.
    """
    if sample.frame is not model.frame:
        msg = f"Sample is in the {sample.frame} frame but the model is {model.frame}."
        raise ModelError(msg)

    values = sample.assignment
    for v in sorted(model.variables):
        if v not in values:
            raise EvaluationError(v)

    total = 0.0
    for v, bias in model.linear.items():
        total += bias * values[v]
    for (u, v), bias in model.quadratic.items():
        total += bias * values[u] * values[v]
    return total


def energies(model: QuboModel, states: np.ndarray, order: Sequence[int]) -> np.ndarray:
    """Evaluate many samples at once.

    Args:
        model: The model to evaluate.
        states: A (reads, len(order)) array of variable values in the model's frame.
        order: The variable id of each column of `states`.

    Raises:
        EvaluationError: If a model variable has no column.
    """
    column = {v: i for i, v in enumerate(order)}
    for v in sorted(model.variables):
        if v not in column:
            raise EvaluationError(v)

    x = np.asarray(states, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    total = np.zeros(x.shape[0])
    if model.linear:
        idx = np.fromiter((column[v] for v in model.linear), dtype=np.intp)
        total += x[:, idx] @ np.fromiter(model.linear.values(), dtype=np.float64)
    if model.quadratic:
        us = np.fromiter((column[u] for u, _ in model.quadratic), dtype=np.intp)
        vs = np.fromiter((column[v] for _, v in model.quadratic), dtype=np.intp)
        total += (x[:, us] * x[:, vs]) @ np.fromiter(model.quadratic.values(), dtype=np.float64)
    return total


def qubo_ising_convert(model: QuboModel, to: Frame) -> tuple[QuboModel, float]:
    """Rewrite a model in the other frame.

    With x = (s + 1) / 2 the energies satisfy E_source(v) = E_target(v') + offset for every
    assignment v and its image v' in the target frame. Converting to the model's own frame
    returns it unchanged with offset 0.

    Returns:
        The converted model and the constant offset.
    """
    if to is model.frame:
        return model, 0.0

    linear: dict[int, float] = dict.fromkeys(model.variables, 0.0)
    quadratic: dict[tuple[int, int], float] = {}

    if to is Frame.ISING:
        offset = 0.0
        for v, h in model.linear.items():
            linear[v] += h / 2
            offset += h / 2
        for (u, v), j in model.quadratic.items():
            quadratic[u, v] = j / 4
            linear[u] += j / 4
            linear[v] += j / 4
            offset += j / 4
    else:
        offset = 0.0
        for v, h in model.linear.items():
            linear[v] += 2 * h
            offset -= h
        for (u, v), j in model.quadratic.items():
            quadratic[u, v] = 4 * j
            linear[u] -= 2 * j
            linear[v] -= 2 * j
            offset += j

    linear = {v: b for v, b in linear.items() if b != 0.0}
    converted = QuboModel.from_terms(linear, quadratic, variables=model.variables, frame=to)
    return converted, offset


def autoscale(model: QuboModel) -> tuple[QuboModel, float]:
    """Scale a model so linear terms fit [-1, 1] and quadratic terms fit [-2, 2].

    The factor is min(1 / max|h|, 2 / max|J|), where a class with no nonzero coefficient does
    not constrain it. At least one bound ends up tight. A model with no nonzero coefficient is
    returned unchanged with factor 1.
    """
    candidates = []
    if (max_h := model.max_abs_linear()) > 0:
        candidates.append(1.0 / max_h)
    if (max_j := model.max_abs_quadratic()) > 0:
        candidates.append(2.0 / max_j)
    if not candidates:
        return model, 1.0

    factor = min(candidates)
    if factor == 1.0:
        return model, factor
    return model.scaled(factor), factor


def combine_with_indicator(problem: QuboModel, indicator: QuboModel) -> CombinedProgram:
    """Place an indicator QUBO next to a problem QUBO on disjoint variables.

    The indicator is weighted by C = |Q_P| / |Q_I|, the ratio of the largest absolute
    coefficients (linear and quadratic alike), so both parts span the same coefficient range
    before the device rescales the whole program.

    Raises:
        ModelError: If the variable sets overlap, or either model has no nonzero coefficient.
    """
    overlap = problem.variables & indicator.variables
    if overlap:
        msg = (
            f"Problem and indicator share {plural('variable', len(overlap), with_count=True)} "
            f"(e.g. {min(overlap)}); they must be disjoint."
        )
        raise ModelError(msg)
    if indicator.is_zero():
        msg = "Indicator has no nonzero coefficient, so its scale constant is undefined."
        raise ModelError(msg)
    if problem.is_zero():
        msg = "Problem has no nonzero coefficient; the indicator would be scaled to nothing."
        raise ModelError(msg)

    constant = problem.max_abs_coefficient() / indicator.max_abs_coefficient()
    scaled = indicator.scaled(constant) if constant != 1.0 else indicator
    combined = QuboModel.union(problem, scaled)
    return CombinedProgram(
        problem=problem, indicator=indicator, scale_constant=constant, combined=combined
    )
