"""QUBO text files.

One term per line, `i j coeff`, where `i == j` marks a linear term. Lines starting with `#` are
comments; a `# frame ising` comment marks a model in the Ising frame. Every variable is written
with a linear line (possibly zero) so variables without terms survive a round trip.
"""

from __future__ import annotations

from pathlib import Path

from annealwatch.core import FileFormatError, ModelError
from annealwatch.qubo.types import Frame, QuboModel


def save_qubo(model: QuboModel, path: Path | str) -> Path:
    """Write a model to `path` and return the path."""
    path = Path(path)
    lines = [f"# frame {model.frame}"]
    lines.extend(f"{v} {v} {model.linear.get(v, 0.0)!r}" for v in sorted(model.variables))
    lines.extend(f"{u} {v} {bias!r}" for (u, v), bias in model.quadratic.items())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def load_qubo(path: Path | str) -> QuboModel:
    """Read a model written by `save_qubo` or by hand.

    Raises:
        FileFormatError: If a line is malformed or a term is invalid.
    """
    path = Path(path)
    frame = Frame.QUBO
    linear: dict[int, float] = {}
    quadratic: dict[tuple[int, int], float] = {}

    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            words = line[1:].split()
            if len(words) == 2 and words[0] == "frame":
                try:
                    frame = Frame(words[1])
                except ValueError:
                    raise FileFormatError(path, lineno, f"unknown frame '{words[1]}'") from None
            continue

        fields = line.split()
        if len(fields) != 3:
            raise FileFormatError(path, lineno, f"expected 'i j coeff', got {len(fields)} fields")
        try:
            i, j, bias = int(fields[0]), int(fields[1]), float(fields[2])
        except ValueError as e:
            raise FileFormatError(path, lineno, str(e)) from e
        if i < 0 or j < 0:
            raise FileFormatError(path, lineno, "variable ids must be non-negative")

        if i == j:
            linear[i] = linear.get(i, 0.0) + bias
        else:
            key = (min(i, j), max(i, j))
            quadratic[key] = quadratic.get(key, 0.0) + bias

    try:
        return QuboModel.from_terms(linear, quadratic, frame=frame)
    except ModelError as e:
        raise FileFormatError(path, 0, str(e)) from e
