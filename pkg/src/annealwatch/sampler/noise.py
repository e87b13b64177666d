"""Drifting effective inverse temperature.

The simulator's only noise source is an Ornstein-Uhlenbeck process on beta, advanced once per
call:

    beta' = max(floor, beta + reversion * (mean - beta) * dt + volatility * sqrt(dt) * xi)

with xi standard normal. Mean reversion keeps the drift stationary while still producing the
stretches of rising and falling solution quality that the indicator is meant to track.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from annealwatch.core import ConfigError, Stream, substream


@dataclass(frozen=True)
class NoiseProcessState:
    """One point of the beta process, including the state of its random stream.

    States are values: `advance_noise` returns a new one and never touches the old one, so a state
    can be stored and replayed.
    """

    beta_mean: float
    reversion: float
    volatility: float
    dt: float
    current_beta: float
    floor: float
    step: int = 0
    rng_state: dict[str, Any] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.beta_mean <= 0 or self.floor <= 0 or self.dt <= 0:
            msg = "Noise mean, floor and dt must all be positive."
            raise ConfigError(msg)
        if self.reversion < 0 or self.volatility < 0:
            msg = "Noise reversion and volatility must be non-negative."
            raise ConfigError(msg)
        if self.current_beta < self.floor:
            object.__setattr__(self, "current_beta", self.floor)

    @classmethod
    def create(
        cls,
        beta_mean: float = 1.0,
        reversion: float = 0.005,
        volatility: float = 0.03,
        dt: float = 1.0,
        floor: float = 0.05,
        beta0: float | None = None,
        seed: int = 0,
    ) -> NoiseProcessState:
        """Start a process at `beta0` (default: the mean) with its own seeded stream."""
        rng = substream(seed, Stream.NOISE)
        return cls(
            beta_mean=beta_mean,
            reversion=reversion,
            volatility=volatility,
            dt=dt,
            current_beta=beta_mean if beta0 is None else beta0,
            floor=floor,
            rng_state=rng.bit_generator.state,
        )

    @classmethod
    def frozen(cls, beta: float) -> NoiseProcessState:
        """A process that stays at `beta` forever."""
        return cls.create(beta_mean=beta, reversion=0.0, volatility=0.0, floor=min(beta, 0.05))

    @property
    def stationary_std(self) -> float:
        """Standard deviation of the stationary distribution (inf without mean reversion)."""
        if self.reversion == 0:
            return 0.0 if self.volatility == 0 else math.inf
        return self.volatility / math.sqrt(2 * self.reversion)


def advance_noise(state: NoiseProcessState) -> NoiseProcessState:
    """Take one Euler-Maruyama step of the process, clamped at the floor."""
    bit_gen = np.random.PCG64()
    bit_gen.state = state.rng_state
    xi = np.random.Generator(bit_gen).standard_normal()

    beta = state.current_beta
    beta += state.reversion * (state.beta_mean - beta) * state.dt
    beta += state.volatility * math.sqrt(state.dt) * float(xi)
    return replace(
        state,
        current_beta=max(state.floor, beta),
        step=state.step + 1,
        rng_state=bit_gen.state,
    )
