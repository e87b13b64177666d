from __future__ import annotations

from .runpaths import RunPaths
