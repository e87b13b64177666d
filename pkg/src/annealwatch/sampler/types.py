from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from annealwatch.core import ConfigError
from annealwatch.qubo import Sample


@dataclass(frozen=True)
class AnnealCallConfig:
    """Parameters of one sampler call.

    Args:
        num_reads: Reads (anneals) per call.
        sweeps: Metropolis passes per read.
        reduce_intersample_correlation: Give every read its own random stream and random start.
                                        When off, each read continues from the previous read's
                                        final state.
        seed: Run seed; read streams are keyed by (seed, call index, read index).
        beta_start_fraction: First pass of a read runs at this fraction of the call's beta.
        random_sweeps: Optional (low, high) range; each call then draws its sweep count uniformly
                       from it, the simulator's analog of randomizing the annealing time.
        annealing_time: Device pass-through, ignored by the simulator.
        programming_thermalization: Device pass-through, ignored by the simulator.
        readout_thermalization: Device pass-through, ignored by the simulator.
    """

    num_reads: int = 100
    sweeps: int = 20
    reduce_intersample_correlation: bool = True
    seed: int = 0
    beta_start_fraction: float = 0.01
    random_sweeps: tuple[int, int] | None = None
    annealing_time: float | None = None
    programming_thermalization: float | None = None
    readout_thermalization: float | None = None

    def __post_init__(self):
        if self.num_reads < 1:
            msg = f"num_reads must be at least 1, got {self.num_reads}."
            raise ConfigError(msg)
        if self.sweeps < 1:
            msg = f"sweeps must be at least 1, got {self.sweeps}."
            raise ConfigError(msg)
        if self.seed < 0:
            msg = f"Seeds must be non-negative, got {self.seed}."
            raise ConfigError(msg)
        if not 0 < self.beta_start_fraction <= 1:
            msg = f"beta_start_fraction must lie in (0, 1], got {self.beta_start_fraction}."
            raise ConfigError(msg)
        if self.random_sweeps is not None:
            low, high = self.random_sweeps
            if not 1 <= low <= high:
                msg = f"random_sweeps must be a range 1 <= low <= high, got {self.random_sweeps}."
                raise ConfigError(msg)
            object.__setattr__(self, "random_sweeps", (int(low), int(high)))


@dataclass(frozen=True, eq=False)
class SampleBatch:
    """The reads of one call.

    `states` is a (num_reads, len(variables)) int8 array in the QUBO frame; column i holds
    variable `variables[i]`. `energies[r]` is the energy of read r under the sampled program.
    """

    states: np.ndarray = field(repr=False)
    variables: tuple[int, ...]
    energies: np.ndarray = field(repr=False)
    call_index: int
    beta_used: float
    sweeps_used: int = 0

    def __post_init__(self):
        if self.states.shape[0] != self.energies.shape[0]:
            msg = f"{self.states.shape[0]} states but {self.energies.shape[0]} energies."
            raise ValueError(msg)

    @property
    def num_reads(self) -> int:
        return int(self.states.shape[0])

    @property
    def mean_energy(self) -> float:
        return float(np.mean(self.energies))

    @cached_property
    def samples(self) -> list[Sample]:
        """The reads as `Sample` objects, built on first access."""
        variables = self.variables
        return [Sample(dict(zip(variables, map(int, row), strict=True))) for row in self.states]
