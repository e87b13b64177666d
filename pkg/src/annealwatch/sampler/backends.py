"""Sampler backends and the registry that resolves them by name.

The simulator is the only backend shipped. A client for a physical annealer would implement
`SamplerBackend` and register itself:

```python
BackendRegistry().register("qpu", MyQpuClient)
backend = BackendRegistry().create("qpu", token=...)
```
"""

from __future__ import annotations

from threading import Lock
from typing import TYPE_CHECKING, Any, ClassVar, Protocol, runtime_checkable

from annealwatch.core import ConfigError, Singleton
from annealwatch.log import WatchLog
from annealwatch.sampler.kernel import CompiledModel
from annealwatch.sampler.noise import NoiseProcessState
from annealwatch.sampler.ops import run_call

if TYPE_CHECKING:
    from collections.abc import Callable

    from annealwatch.qubo import QuboModel
    from annealwatch.sampler.types import AnnealCallConfig, SampleBatch

logger = WatchLog.get_logger(__name__)


@runtime_checkable
class SamplerBackend(Protocol):
    """Anything that turns a hardware-level program into a batch of reads.

    Implementations must return `cfg.num_reads` reads covering every program variable, and number
    their calls consecutively from 0.
    """

    name: str

    def sample(self, program: QuboModel, cfg: AnnealCallConfig) -> SampleBatch: ...


class SimulatedAnnealer:
    """Metropolis simulator whose inverse temperature drifts from call to call.

    Calls are numbered in the order `sample` is invoked, and the noise process advances once per
    call. Compiled forms of the most recently submitted program objects are kept, so alternating
    between a few programs does not recompile them.
    """

    name = "sim"
    CACHE_SIZE: ClassVar[int] = 4

    def __init__(self, noise: NoiseProcessState | None = None):
        self.noise = noise or NoiseProcessState.create()
        self.calls = 0
        self._compiled: dict[int, CompiledModel] = {}
        self._lock = Lock()

    def sample(self, program: QuboModel, cfg: AnnealCallConfig) -> SampleBatch:
        with self._lock:
            compiled = self._compile(program)
            batch, self.noise = run_call(compiled, cfg, self.noise, call_index=self.calls)
            self.calls += 1
            return batch

    def _compile(self, program: QuboModel) -> CompiledModel:
        cached = self._compiled.get(id(program))
        if cached is not None and cached.model is program:
            return cached
        if len(self._compiled) >= self.CACHE_SIZE:
            del self._compiled[next(iter(self._compiled))]
        compiled = CompiledModel.from_model(program)
        self._compiled[id(program)] = compiled
        return compiled


class BackendRegistry(metaclass=Singleton):
    """Process-wide map from backend names to factories."""

    def __init__(self):
        self._factories: dict[str, Callable[..., SamplerBackend]] = {}
        self.register(SimulatedAnnealer.name, SimulatedAnnealer)

    def register(self, name: str, factory: Callable[..., SamplerBackend]) -> None:
        """Register `factory` under `name`, replacing any previous entry."""
        if name in self._factories:
            logger.debug("Replacing sampler backend '%s'.", name)
        self._factories[name] = factory

    def names(self) -> list[str]:
        return sorted(self._factories)

    def create(self, name: str, **kwargs: Any) -> SamplerBackend:
        """Build the backend registered as `name`.

        Raises:
            ConfigError: If no backend has that name.
        """
        try:
            factory = self._factories[name]
        except KeyError:
            known = ", ".join(self.names())
            msg = f"Unknown sampler backend '{name}'. Known backends: {known}."
            raise ConfigError(msg) from None
        return factory(**kwargs)
