"""Problem instances and indicator QUBOs.

Random Erdős-Rényi graphs are encoded as maximum clique (MC) or minimum vertex cover (MVC) QUBOs.
Performance indicators are random QUBOs planted on the qubits an embedding leaves idle.

```python
from annealwatch.problems import ProblemKind, encode, gen_er_graph

g = gen_er_graph(16, density=0.3, seed=7)
problem = encode(ProblemKind.MC, g)  # A=1, B=2
```
"""

from __future__ import annotations

from .encodings import encode, mc_qubo, mvc_qubo
from .graphs import gen_er_graph, load_graph, save_graph
from .indicators import gen_indicator
from .types import (
    EncodedProblem,
    GraphInstance,
    IndicatorKind,
    IndicatorSpec,
    PenaltyWeights,
    ProblemKind,
)
