"""Hardware-graph text files.

```
# topology chimera 2 4
hw 32
n 0
n 1
c 0 4
d 17
```

`hw <count>` is the working-node count, followed by `n <id>` node lines, `c <u> <v>` coupler lines
and `d <id>` defect lines. The optional `# topology chimera <m> <t>` comment restores the graph's
kind on import; any other `#` line is ignored.
"""

from __future__ import annotations

from pathlib import Path

from annealwatch.core import FileFormatError, TopologyError
from annealwatch.log import WatchLog
from annealwatch.topology.types import ChimeraShape, Coupler, HardwareGraph

logger = WatchLog.get_logger(__name__)


def export_graph(g: HardwareGraph, path: Path | str) -> Path:
    """Write `g` to `path` and return the path."""
    path = Path(path)
    lines = []
    if g.kind is not None:
        lines.append(f"# topology chimera {g.kind.m} {g.kind.t}")
    lines.append(f"hw {len(g.nodes)}")
    lines.extend(f"n {q}" for q in sorted(g.nodes))
    lines.extend(f"c {u} {v}" for u, v in sorted(g.couplers))
    lines.extend(f"d {q}" for q in sorted(g.defects))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def import_graph(path: Path | str) -> HardwareGraph:
    """Read a hardware graph, e.g. a Pegasus working graph exported from a vendor tool.

    Raises:
        FileFormatError: On malformed lines, a missing or wrong `hw` header, or a coupler whose
                         endpoint is not a declared node.
    """
    path = Path(path)
    declared: int | None = None
    kind: ChimeraShape | None = None
    nodes: set[int] = set()
    defects: set[int] = set()
    couplers: list[tuple[int, Coupler]] = []

    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            words = line[1:].split()
            if len(words) == 4 and words[:2] == ["topology", "chimera"]:
                kind = ChimeraShape(_int(words[2], path, lineno), _int(words[3], path, lineno))
            continue

        tag, *args = line.split()
        match tag, len(args):
            case "hw", 1:
                if declared is not None:
                    raise FileFormatError(path, lineno, "duplicate 'hw' header")
                declared = _int(args[0], path, lineno)
            case "n", 1:
                nodes.add(_int(args[0], path, lineno))
            case "d", 1:
                defects.add(_int(args[0], path, lineno))
            case "c", 2:
                u, v = _int(args[0], path, lineno), _int(args[1], path, lineno)
                if u == v:
                    raise FileFormatError(path, lineno, f"coupler ({u}, {v}) is a self-loop")
                couplers.append((lineno, (u, v)))
            case _:
                raise FileFormatError(path, lineno, f"unrecognized record '{line}'")

        if declared is None:
            raise FileFormatError(path, lineno, "records must follow an 'hw <count>' header")

    if declared is None:
        raise FileFormatError(path, 0, "missing 'hw <count>' header")
    if declared != len(nodes):
        msg = f"header declares {declared} nodes but {len(nodes)} were listed"
        raise FileFormatError(path, 0, msg)
    for lineno, (u, v) in couplers:
        if u not in nodes or v not in nodes:
            msg = f"coupler ({u}, {v}) references an undeclared node"
            raise FileFormatError(path, lineno, msg)

    try:
        g = HardwareGraph.from_edges(nodes, [c for _, c in couplers], kind=kind, defects=defects)
    except TopologyError as e:
        raise FileFormatError(path, 0, str(e)) from e

    logger.debug("Imported %s from %s.", g.describe(), path)
    return g


def _int(word: str, path: Path, lineno: int) -> int:
    try:
        value = int(word)
    except ValueError:
        raise FileFormatError(path, lineno, f"'{word}' is not an integer") from None
    if value < 0:
        raise FileFormatError(path, lineno, f"id {value} is negative")
    return value
