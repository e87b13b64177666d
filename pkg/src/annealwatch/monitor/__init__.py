"""Two-phase quality monitoring driven by the performance indicator.

A `BurnInStore` first collects the indicator's per-call energies. Once it holds `burn_in` values,
each new call can be annotated with the percentile rank of its indicator energy, or gated: its
problem samples are accepted only if the indicator energy, normalized against the history, falls
below a threshold.

```python
from annealwatch.monitor import BurnInStore, gate, observe

store = BurnInStore(burn_in=10)
for e in first_ten_indicator_energies:
    observe(store, e)
decision = gate(store, next_indicator_energy, tau=0.3)
```
"""

from __future__ import annotations

from .io import STORE_SCHEMA, load_store, save_store
from .ops import (
    annotate,
    calibrate_tau,
    gate,
    normalize_against,
    observe,
    percentile_rank,
    run_gate_procedure,
    stratify,
)
from .types import BurnInStore, GateDecision, GateLog, GatePhase, GateRecord, StratifiedHistogram
