from __future__ import annotations

from threading import Lock
from typing import Any, ClassVar, TypeVar

T = TypeVar("T")


class Singleton(type):
    """Thread-safe metaclass for process-wide registries and factories.

    The first instantiation of a class using this metaclass creates and stores the instance;
    later instantiations return the stored one. Each class gets its own lock, so two different
    singletons never contend. `WatchLog`, `WatchEnv` and the sampler `BackendRegistry` are all
    built on it.

        class BackendRegistry(metaclass=Singleton):
            def __init__(self):
                self._factories = {}
    """

    __instances: ClassVar[dict[type, Any]] = {}
    __locks: ClassVar[dict[type, Lock]] = {}
    __guard: ClassVar[Lock] = Lock()

    def __call__(cls: type[T], *args: Any, **kwargs: Any) -> T:
        """Create a new instance of the class if one does not already exist."""
        with Singleton.__guard:
            lock = Singleton.__locks.setdefault(cls, Lock())

        with lock:
            if cls not in Singleton.__instances:
                instance = super().__call__(*args, **kwargs)  # type: ignore[misc]
                Singleton.__instances[cls] = instance
            return Singleton.__instances[cls]

    @staticmethod
    def reset(cls_: type) -> None:
        """Forget the stored instance of a class so the next call builds a fresh one."""
        with Singleton.__guard:
            Singleton.__instances.pop(cls_, None)
