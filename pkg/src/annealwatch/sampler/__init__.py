"""Simulated annealer with drifting noise.

Reads are single-flip Metropolis runs compiled with numba. Noise enters only as the effective
inverse temperature, an Ornstein-Uhlenbeck process advanced once per call, so every program
sampled in the same call sees the same noise.

```python
from annealwatch.sampler import AnnealCallConfig, BackendRegistry, NoiseProcessState

sim = BackendRegistry().create("sim", noise=NoiseProcessState.create(volatility=0.03, seed=1))
batch = sim.sample(hardware_model, AnnealCallConfig(num_reads=100, seed=1))
batch.mean_energy
```
"""

from __future__ import annotations

from .backends import BackendRegistry, SamplerBackend, SimulatedAnnealer
from .kernel import CompiledModel, anneal_read, beta_schedule
from .noise import NoiseProcessState, advance_noise
from .ops import metropolis_sample, run_call
from .types import AnnealCallConfig, SampleBatch
