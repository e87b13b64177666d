"""Erdős-Rényi graph generation and edge-list files.

Edge-list files start with an `n <count>` header followed by one `u v` line per edge; `#` lines are
comments.
"""

from __future__ import annotations

from pathlib import Path

import networkx as nx

from annealwatch.core import FileFormatError, ModelError, Stream, derive_seed, substream
from annealwatch.problems.types import GraphInstance


def gen_er_graph(n: int, density: float | None = None, seed: int = 0) -> GraphInstance:
    """Draw a G(n, p) random graph.

    Each of the n(n-1)/2 vertex pairs is an edge independently with probability `density`. The
    same (n, density, seed) always gives the same edge set.

    Args:
        n: Number of vertices.
        density: Edge probability in [0, 1]. If None, it is drawn uniformly from (0, 1) using the
                 seed, as for the benchmark instances.
        seed: Run seed.

    Raises:
        ModelError: If n < 1 or the density is outside [0, 1].
    """
    if n < 1:
        msg = f"A graph needs at least one vertex, got n={n}."
        raise ModelError(msg)
    if density is None:
        density = float(substream(seed, Stream.DENSITY, n).uniform(0.0, 1.0))
    if not 0.0 <= density <= 1.0:
        msg = f"Graph density must lie in [0, 1], got {density}."
        raise ModelError(msg)

    g = nx.gnp_random_graph(n, density, seed=derive_seed(seed, Stream.GRAPH, n))
    return GraphInstance.from_edges(n, g.edges(), density=density, seed=seed)


def save_graph(g: GraphInstance, path: Path | str) -> Path:
    """Write `g` as an edge list and return the path."""
    path = Path(path)
    lines = [f"# density {g.density!r} seed {g.seed}", f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def load_graph(path: Path | str) -> GraphInstance:
    """Read an edge-list file.

    The density is the one recorded by `save_graph` when present, else the realized density.

    Raises:
        FileFormatError: On a missing header, malformed lines, self-loops or out-of-range vertices.
    """
    path = Path(path)
    n: int | None = None
    density: float | None = None
    seed = 0
    edges: list[tuple[int, int]] = []

    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            words = line[1:].split()
            if len(words) == 4 and words[0] == "density" and words[2] == "seed":
                try:
                    density, seed = float(words[1]), int(words[3])
                except ValueError:
                    raise FileFormatError(path, lineno, "malformed density comment") from None
            continue

        fields = line.split()
        try:
            values = [int(f) for f in fields[1:]] if fields[0] == "n" else [int(f) for f in fields]
        except ValueError:
            raise FileFormatError(path, lineno, f"non-integer field in '{line}'") from None

        if fields[0] == "n":
            if n is not None or len(values) != 1:
                raise FileFormatError(path, lineno, "expected a single 'n <count>' header")
            n = values[0]
            continue
        if n is None:
            raise FileFormatError(path, lineno, "edges must follow the 'n <count>' header")
        if len(values) != 2:
            raise FileFormatError(path, lineno, f"expected 'u v', got {len(values)} fields")

        u, v = values
        if u == v:
            raise FileFormatError(path, lineno, f"self-loop on vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise FileFormatError(path, lineno, f"edge ({u}, {v}) leaves the range 0..{n - 1}")
        edges.append((u, v))

    if n is None:
        raise FileFormatError(path, 0, "missing 'n <count>' header")
    try:
        return GraphInstance.from_edges(n, edges, density=density, seed=seed)
    except ModelError as e:
        raise FileFormatError(path, 0, str(e)) from e
