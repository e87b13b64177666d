from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum
from types import MappingProxyType
from typing import TYPE_CHECKING

from annealwatch.core import ModelError, plural

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping

type Pair = tuple[int, int]


class Frame(StrEnum):
    """Variable domain of a model or sample: QUBO uses {0, 1}, Ising uses {-1, +1}."""

    QUBO = "qubo"
    ISING = "ising"

    @property
    def values(self) -> tuple[int, int]:
        return (0, 1) if self is Frame.QUBO else (-1, 1)


def canonical_pair(u: int, v: int) -> Pair:
    """Order a coupling key as (min id, max id).

    Raises:
        ModelError: If both ids are the same.
    """
    if u == v:
        msg = f"Quadratic term ({u}, {v}) must join two distinct variables."
        raise ModelError(msg)
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class QuboModel:
    """A sparse quadratic model over integer variable ids.

    Absent terms are zero. Pair keys are stored canonically as (min id, max id), and terms given
    twice under either orientation are summed. Instances are immutable; use `from_terms` to
    build one.
    """

    variables: frozenset[int]
    linear: Mapping[int, float]
    quadratic: Mapping[Pair, float]
    frame: Frame = Frame.QUBO

    @classmethod
    def from_terms(
        cls,
        linear: Mapping[int, float] | None = None,
        quadratic: Mapping[Pair, float] | Iterable[tuple[Pair, float]] | None = None,
        variables: Iterable[int] | None = None,
        frame: Frame = Frame.QUBO,
    ) -> QuboModel:
        """Build a validated model.

        Args:
            linear: Linear coefficients by variable id.
            quadratic: Quadratic coefficients by (u, v) pair, in any orientation.
            variables: Extra variables with no terms. Every id used by a term is added anyway.
            frame: Whether the coefficients are meant for binary or spin variables.

        Raises:
            ModelError: If a coefficient is not finite, a pair repeats an id, or an id is
                        negative.
        """
        lin: dict[int, float] = {}
        for v, bias in (linear or {}).items():
            lin[int(v)] = lin.get(int(v), 0.0) + _finite(bias, v)

        quad: dict[Pair, float] = {}
        items = quadratic.items() if hasattr(quadratic, "items") else (quadratic or ())
        for (u, v), bias in items:  # type: ignore[misc]
            key = canonical_pair(int(u), int(v))
            quad[key] = quad.get(key, 0.0) + _finite(bias, key)

        ids = set(lin)
        ids.update(variables or ())
        for u, v in quad:
            ids.add(u)
            ids.add(v)
        if any(v < 0 for v in ids):
            msg = "Variable ids must be non-negative integers."
            raise ModelError(msg)

        return cls(
            variables=frozenset(ids),
            linear=MappingProxyType(dict(sorted(lin.items()))),
            quadratic=MappingProxyType(dict(sorted(quad.items()))),
            frame=frame,
        )

    @classmethod
    def empty(cls, variables: Iterable[int] = (), frame: Frame = Frame.QUBO) -> QuboModel:
        return cls.from_terms(variables=variables, frame=frame)

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    def max_abs_coefficient(self) -> float:
        """Largest absolute coefficient over both linear and quadratic terms (0 if none)."""
        return max(self.max_abs_linear(), self.max_abs_quadratic())

    def max_abs_linear(self) -> float:
        return max((abs(b) for b in self.linear.values()), default=0.0)

    def max_abs_quadratic(self) -> float:
        return max((abs(b) for b in self.quadratic.values()), default=0.0)

    def is_zero(self) -> bool:
        return self.max_abs_coefficient() == 0.0

    def scaled(self, factor: float) -> QuboModel:
        """Return a copy with every coefficient multiplied by `factor`."""
        return QuboModel.from_terms(
            {v: b * factor for v, b in self.linear.items()},
            {k: b * factor for k, b in self.quadratic.items()},
            variables=self.variables,
            frame=self.frame,
        )

    def restricted(self, variables: Iterable[int]) -> QuboModel:
        """Return the submodel induced on `variables` (terms leaving the set are dropped)."""
        keep = frozenset(variables)
        return QuboModel.from_terms(
            {v: b for v, b in self.linear.items() if v in keep},
            {(u, v): b for (u, v), b in self.quadratic.items() if u in keep and v in keep},
            variables=keep & self.variables,
            frame=self.frame,
        )

    def relabeled(self, mapping: Mapping[int, int]) -> QuboModel:
        """Return a copy with variable ids renamed through `mapping` (which must be injective).

        Raises:
            ModelError: If `mapping` misses a variable or merges two of them.
        """
        missing = self.variables - mapping.keys()
        if missing:
            msg = f"Relabeling has no target for variable {min(missing)}."
            raise ModelError(msg)
        if len({mapping[v] for v in self.variables}) != len(self.variables):
            msg = "Relabeling maps two variables to the same id."
            raise ModelError(msg)
        return QuboModel.from_terms(
            {mapping[v]: b for v, b in self.linear.items()},
            {(mapping[u], mapping[v]): b for (u, v), b in self.quadratic.items()},
            variables=(mapping[v] for v in self.variables),
            frame=self.frame,
        )

    def degree(self) -> dict[int, int]:
        """Number of quadratic terms touching each variable."""
        deg = dict.fromkeys(self.variables, 0)
        for u, v in self.quadratic:
            deg[u] += 1
            deg[v] += 1
        return deg

    @staticmethod
    def union(*models: QuboModel) -> QuboModel:
        """Disjoint union of models sharing a frame.

        Raises:
            ModelError: If two models share a variable or their frames differ.
        """
        if not models:
            return QuboModel.empty()
        frame = models[0].frame
        seen: set[int] = set()
        linear: dict[int, float] = {}
        quadratic: dict[Pair, float] = {}
        for model in models:
            if model.frame is not frame:
                msg = "Cannot combine models from different frames."
                raise ModelError(msg)
            overlap = seen & model.variables
            if overlap:
                shared = plural("variable", len(overlap), with_count=True)
                msg = f"Models share {shared}, e.g. {min(overlap)}."
                raise ModelError(msg)
            seen |= model.variables
            linear.update(model.linear)
            quadratic.update(model.quadratic)
        return QuboModel.from_terms(linear, quadratic, variables=seen, frame=frame)


def _finite(value: float, where: object) -> float:
    value = float(value)
    if not math.isfinite(value):
        msg = f"Coefficient for {where} is not finite: {value}."
        raise ModelError(msg)
    return value


@dataclass(frozen=True)
class Sample:
    """An assignment of values to variables, in the given frame."""

    assignment: Mapping[int, int]
    frame: Frame = Frame.QUBO

    def __post_init__(self):
        allowed = self.frame.values
        bad = [v for v, x in self.assignment.items() if x not in allowed]
        if bad:
            v = bad[0]
            msg = f"Variable {v} has value {self.assignment[v]}, expected one of {allowed}."
            raise ModelError(msg)
        object.__setattr__(self, "assignment", MappingProxyType(dict(self.assignment)))

    def __getitem__(self, variable: int) -> int:
        return self.assignment[variable]

    def to_frame(self, frame: Frame) -> Sample:
        """Map binary values to spins (x -> 2x - 1) or back."""
        if frame is self.frame:
            return self
        if frame is Frame.ISING:
            return Sample({v: 2 * x - 1 for v, x in self.assignment.items()}, Frame.ISING)
        return Sample({v: (x + 1) // 2 for v, x in self.assignment.items()}, Frame.QUBO)


@dataclass(frozen=True)
class CombinedProgram:
    """A problem QUBO and an indicator QUBO sharing one device program.

    `combined` equals `problem + scale_constant * indicator` term by term, and no term joins the
    two variable sets.
    """

    problem: QuboModel
    indicator: QuboModel
    scale_constant: float
    combined: QuboModel = field(repr=False)
