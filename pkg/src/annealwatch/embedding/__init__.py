"""Clique embeddings, chain strength, and moving models between logical and physical qubits.

```python
from annealwatch.embedding import ChainStrengthPolicy, chimera_clique_embedding, embed_qubo
from annealwatch.topology import chimera

emb = chimera_clique_embedding(chimera(4), k=16)
hardware_model = embed_qubo(logical_model, emb, ChainStrengthPolicy.utc(1.0))
```

Embeddings for defective or non-Chimera chips are loaded with `load_embedding`.
"""

from __future__ import annotations

from .clique import chimera_clique_embedding, clique_capacity
from .io import load_embedding, save_embedding
from .ops import embed_qubo, unembed, unembed_states
from .strength import utc_chain_strength
from .types import (
    ChainMode,
    ChainStrengthPolicy,
    Embedding,
    EmbeddingReport,
    Violation,
    ViolationKind,
)
from .validate import interchain_couplers, validate_embedding
