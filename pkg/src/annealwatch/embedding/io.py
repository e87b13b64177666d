"""Embedding text files.

```
em 3
chain 0 4 12
chain 1 5
chain 2 6 14
```

The `em <k>` header gives the number of chains; each `chain <logical_id> <q1> <q2> ...` line
lists a chain in order. `#` lines are comments.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING

from annealwatch.core import FileFormatError
from annealwatch.embedding.types import Embedding

if TYPE_CHECKING:
    from annealwatch.topology import HardwareGraph


def save_embedding(e: Embedding, path: Path | str) -> Path:
    """Write `e` to `path` and return the path."""
    path = Path(path)
    lines = [f"em {e.k}"]
    lines.extend(f"chain {v} {' '.join(map(str, chain))}" for v, chain in e.chains.items())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def load_embedding(path: Path | str, hardware: HardwareGraph) -> Embedding:
    """Read an embedding for `hardware`, e.g. one found by a heuristic embedder for Pegasus.

    The result is not validated here; use `validate_embedding` against the model it will carry.

    Raises:
        FileFormatError: On a missing header, malformed lines, repeated logical ids, or a chain
                         count that disagrees with the header.
    """
    path = Path(path)
    declared: int | None = None
    chains: dict[int, tuple[int, ...]] = {}

    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tag, *args = line.split()
        try:
            numbers = [int(a) for a in args]
        except ValueError:
            raise FileFormatError(path, lineno, f"non-integer field in '{line}'") from None
        if any(n < 0 for n in numbers):
            raise FileFormatError(path, lineno, "ids must be non-negative")

        if tag == "em" and len(numbers) == 1 and declared is None:
            declared = numbers[0]
        elif tag == "chain" and len(numbers) >= 2:
            if declared is None:
                raise FileFormatError(path, lineno, "chains must follow the 'em <k>' header")
            v, *chain = numbers
            if v in chains:
                raise FileFormatError(path, lineno, f"logical id {v} appears twice")
            chains[v] = tuple(chain)
        else:
            raise FileFormatError(path, lineno, f"unrecognized record '{line}'")

    if declared is None:
        raise FileFormatError(path, 0, "missing 'em <k>' header")
    if declared != len(chains):
        raise FileFormatError(path, 0, f"header declares {declared} chains, found {len(chains)}")
    return Embedding(chains, hardware)
