"""Canonical QUBO/Ising models.

A `QuboModel` is an immutable sparse map of linear and quadratic coefficients over non-negative
integer variable ids. Samples assign {0, 1} (QUBO frame) or {-1, +1} (Ising frame) values.

```python
from annealwatch.qubo import QuboModel, Sample, energy, combine_with_indicator

problem = QuboModel.from_terms({0: -1, 1: -1}, {(0, 1): 2})
indicator = QuboModel.from_terms({10: 0.5}, {(10, 11): -0.25})
program = combine_with_indicator(problem, indicator)  # C = 2 / 0.5 = 4
energy(program.combined, Sample({0: 1, 1: 0, 10: 0, 11: 0}))  # -1.0
```
"""

from __future__ import annotations

from .io import load_qubo, save_qubo
from .ops import autoscale, combine_with_indicator, energies, energy, qubo_ising_convert
from .types import CombinedProgram, Frame, QuboModel, Sample, canonical_pair
