"""Idle-qubit performance indicators for monitoring the noise of a quantum annealer.

An annealer's solution quality drifts from call to call. annealwatch plants a small, known
"indicator" QUBO on qubits the real problem leaves idle, samples both in the same call, and uses
the indicator's energy as a live estimate of how noisy that call was.

## What's Inside

- **qubo**: upper-triangular QUBO models, energies, autoscaling and the indicator combination
- **problems**: maximum clique and minimum vertex cover QUBOs, random graphs, both indicator kinds
- **topology**: Chimera graphs, defects, graph files and idle regions
- **embedding**: clique embeddings, chain strength, embedding and unembedding of samples
- **sampler**: a numba Metropolis annealer whose temperature drifts as an Ornstein-Uhlenbeck process
- **series**: moving averages, RMSD, Pearson, quartile agreement, ACF/PACF, ADF and KS tests
- **monitor**: burn-in, percentile annotation, the threshold gate and energy stratification
- **experiment**: YAML-configured runs with CSV/JSON artifacts and plot exports

## Quick Start

```bash
annealwatch run configs/smoke.yaml --set sampler.calls=200
annealwatch export <run dir> timeseries histogram
```

```python
from annealwatch.experiment import load_config, run_experiment

artifacts = run_experiment(load_config("configs/smoke.yaml"))
print(artifacts.report.pearson)
```
"""

from __future__ import annotations
