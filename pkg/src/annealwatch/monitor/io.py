"""JSON persistence for burn-in stores, so a history can be reused across runs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from annealwatch.core import AnnealWatchError, FileFormatError
from annealwatch.monitor.types import BurnInStore

STORE_SCHEMA = "annealwatch.burnin/1"


def save_store(store: BurnInStore, path: Path | str) -> Path:
    """Write the store's settings and full history to `path`."""
    path = Path(path)
    data = {"schema": STORE_SCHEMA, **store.to_dict()}
    path.write_text(json.dumps(data, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    return path


def load_store(path: Path | str) -> BurnInStore:
    """Read a store written by `save_store`.

    Raises:
        FileFormatError: If the file is not a burn-in store document.
    """
    path = Path(path)
    try:
        data: Any = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise FileFormatError(path, e.lineno, e.msg) from e
    if not isinstance(data, dict) or data.get("schema") != STORE_SCHEMA:
        raise FileFormatError(path, 1, f"expected a '{STORE_SCHEMA}' document")
    try:
        return BurnInStore.from_dict(data)
    except (KeyError, TypeError, ValueError, AnnealWatchError) as e:
        raise FileFormatError(path, 0, str(e)) from e
