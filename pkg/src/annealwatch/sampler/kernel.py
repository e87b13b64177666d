"""Compiled single-flip Metropolis kernel over a CSR interaction matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy import sparse

from annealwatch.core import ModelError
from annealwatch.qubo import Frame, QuboModel


@dataclass(frozen=True, eq=False)
class CompiledModel:
    """A QUBO laid out for the kernel.

    Column i of every state array is variable `variables[i]`. The symmetric interaction matrix is
    stored as CSR (`indptr`, `indices`, `weights`) so a variable's local field is a row sum.
    """

    model: QuboModel
    variables: tuple[int, ...]
    h: np.ndarray
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_model(cls, model: QuboModel) -> CompiledModel:
        """Lay out `model` for sampling.

        Raises:
            ModelError: If the model is in the Ising frame.
        """
        if model.frame is not Frame.QUBO:
            msg = "The sampler works on QUBO-frame models."
            raise ModelError(msg)

        variables = tuple(sorted(model.variables))
        column = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        h = np.zeros(n, dtype=np.float64)
        for v, bias in model.linear.items():
            h[column[v]] = bias

        rows = np.fromiter((column[u] for u, _ in model.quadratic), dtype=np.int64)
        cols = np.fromiter((column[v] for _, v in model.quadratic), dtype=np.int64)
        vals = np.fromiter(model.quadratic.values(), dtype=np.float64)
        both = (np.concatenate([rows, cols]), np.concatenate([cols, rows]))
        csr = sparse.coo_matrix((np.concatenate([vals, vals]), both), shape=(n, n)).tocsr()
        csr.sort_indices()
        return cls(
            model=model,
            variables=variables,
            h=h,
            indptr=csr.indptr.astype(np.int64),
            indices=csr.indices.astype(np.int64),
            weights=csr.data.astype(np.float64),
        )

    @property
    def num_variables(self) -> int:
        return len(self.variables)


@njit(cache=True)
def metropolis_sweeps(
    indptr: np.ndarray,
    indices: np.ndarray,
    weights: np.ndarray,
    h: np.ndarray,
    state: np.ndarray,
    betas: np.ndarray,
    uniforms: np.ndarray,
) -> None:
    """Run one Metropolis pass per entry of `betas` over `state` in place.

    Variable i flips when its energy change (1 - 2 x_i)(h_i + sum_j J_ij x_j) is non-positive or
    when `uniforms[s, i] < exp(-beta_s * change)`.
    """
    n = h.shape[0]
    for s in range(betas.shape[0]):
        beta = betas[s]
        for i in range(n):
            field = h[i]
            for p in range(indptr[i], indptr[i + 1]):
                field += weights[p] * state[indices[p]]
            delta = (1 - 2 * state[i]) * field
            if delta <= 0.0 or uniforms[s, i] < math.exp(-beta * delta):
                state[i] = 1 - state[i]


def beta_schedule(beta: float, sweeps: int, start_fraction: float) -> np.ndarray:
    """Inverse temperatures for each pass: geometric from `start_fraction * beta` up to `beta`.

    A start fraction of 1, a zero beta or a single sweep gives a constant schedule.
    """
    if sweeps < 1:
        msg = f"At least one sweep is needed, got {sweeps}."
        raise ValueError(msg)
    if beta < 0 or not 0 < start_fraction <= 1:
        msg = f"Need beta >= 0 and 0 < start fraction <= 1, got {beta} and {start_fraction}."
        raise ValueError(msg)
    if beta == 0 or start_fraction == 1 or sweeps == 1:
        return np.full(sweeps, beta, dtype=np.float64)
    return np.geomspace(start_fraction * beta, beta, sweeps)


def anneal_read(
    compiled: CompiledModel,
    betas: np.ndarray,
    rng: np.random.Generator,
    start: np.ndarray | None = None,
) -> np.ndarray:
    """Run one read and return its final int8 state.

    The start state is uniform random unless given. Its bits are drawn before the acceptance
    uniforms, so a read is a pure function of the generator state and `start`.
    """
    n = compiled.num_variables
    if start is None:
        state = rng.integers(0, 2, size=n, dtype=np.int8)
    else:
        state = np.array(start, dtype=np.int8, copy=True)
    uniforms = rng.random((betas.shape[0], n))
    if n:
        metropolis_sweeps(
            compiled.indptr, compiled.indices, compiled.weights, compiled.h, state, betas, uniforms
        )
    return state
