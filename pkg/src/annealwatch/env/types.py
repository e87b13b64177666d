from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from collections.abc import Callable


@dataclass(frozen=True)
class WatchVar:
    """An environment variable annealwatch reads, with its converter and default.

    Args:
        name: Environment variable name.
        default: Value used when the variable is unset.
        var_type: Converter applied to the raw string (e.g. int, float, a bool parser).
        description: Human-readable description, shown in validation errors.
    """

    name: str
    default: Any = None
    var_type: Callable[[str], Any] = str
    description: str = ""
