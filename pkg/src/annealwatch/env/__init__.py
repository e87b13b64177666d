from __future__ import annotations

from .types import WatchVar
from .watchenv import WatchEnv
