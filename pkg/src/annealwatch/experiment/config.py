"""Experiment configuration.

An experiment is described by one YAML document:

```yaml
schema: annealwatch.experiment/1
topology: {kind: chimera, m: 4, t: 4}
embedding: {k: 16}
problems:
  - {kind: mc, n: 16, density: 0.5, seed: 1}
indicator: {kind: pi1, seed: 2}
chain_strength: {mode: utc, value: 1.0}
sampler: {backend: sim, calls: 2000, num_reads: 100, seed: 3}
noise: {volatility: 0.03, seed: 4}
analysis: {window: 500, burn_in: 10}
output: {directory: runs/paper-analog}
```

Every section is optional and falls back to its defaults. Unknown keys are rejected so typos do
not silently change an experiment. `--set section.key=value` overrides from the command line are
applied with `apply_overrides`; list entries are addressed by index (`problems.0.n=8`).
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import TYPE_CHECKING, Any, ClassVar, Literal, Self

import yaml

from annealwatch.core import ConfigError, plural
from annealwatch.embedding import ChainMode, ChainStrengthPolicy
from annealwatch.problems import IndicatorKind, PenaltyWeights, ProblemKind
from annealwatch.sampler import AnnealCallConfig, NoiseProcessState

if TYPE_CHECKING:
    from collections.abc import Mapping, Sequence

CONFIG_SCHEMA = "annealwatch.experiment/1"


class _Section:
    """Mapping conversion shared by the configuration sections."""

    name: ClassVar[str]

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any] | None) -> Self:
        """Build the section from a mapping, rejecting keys it does not define.

        Raises:
            ConfigError: On unknown keys or invalid values.
        """
        data = dict(data or {})
        known = {f.name for f in fields(cls)}  # type: ignore[arg-type]
        unknown = sorted(set(data) - known)
        if unknown:
            msg = f"Unknown {plural('key', len(unknown))} in '{cls.name}': {unknown}."
            raise ConfigError(msg)
        try:
            return cls(**data)
        except TypeError as e:
            msg = f"Invalid '{cls.name}' section: {e}"
            raise ConfigError(msg) from e

    def to_mapping(self) -> dict[str, Any]:
        items = fields(self)  # type: ignore[arg-type]
        return {f.name: _plain(getattr(self, f.name)) for f in items}


@dataclass(frozen=True)
class TopologyConfig(_Section):
    """The hardware graph: a generated Chimera graph or a graph file, minus defective qubits."""

    name: ClassVar[str] = "topology"

    kind: Literal["chimera", "file"] = "chimera"
    m: int = 4
    t: int = 4
    path: str | None = None
    defects: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "defects", tuple(int(q) for q in self.defects))
        if self.kind not in {"chimera", "file"}:
            msg = f"topology.kind must be 'chimera' or 'file', got '{self.kind}'."
            raise ConfigError(msg)
        if self.kind == "chimera" and not (self.m >= 1 and self.t >= 1):
            msg = f"Chimera dimensions must be positive, got m={self.m}, t={self.t}."
            raise ConfigError(msg)
        if self.kind == "file" and not self.path:
            msg = "topology.path is required when topology.kind is 'file'."
            raise ConfigError(msg)


@dataclass(frozen=True)
class EmbeddingConfig(_Section):
    """Where the problems go.

    `k` is the clique size of a single-problem run (default: the problem size). `origins` places
    the cliques of a multi-problem run; by default they go to the four quadrants of the chip.
    `path` loads an embedding file instead of constructing one.
    """

    name: ClassVar[str] = "embedding"

    k: int | None = None
    origin: tuple[int, int] = (0, 0)
    origins: tuple[tuple[int, int], ...] | None = None
    path: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "origin", _cell(self.origin, "embedding.origin"))
        if self.origins is not None:
            cells = tuple(_cell(o, "embedding.origins") for o in self.origins)
            object.__setattr__(self, "origins", cells)
        if self.k is not None and self.k < 1:
            msg = f"embedding.k must be at least 1, got {self.k}."
            raise ConfigError(msg)


@dataclass(frozen=True)
class ProblemConfig(_Section):
    """One graph problem: generated Erdos-Renyi or loaded from an edge-list file."""

    name: ClassVar[str] = "problems"

    kind: ProblemKind = ProblemKind.MC
    n: int = 16
    density: float | None = None
    seed: int = 0
    a: float | None = None
    b: float | None = None
    path: str | None = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", ProblemKind(self.kind))
        except ValueError:
            msg = f"Problem kind must be one of {[k.value for k in ProblemKind]}, got {self.kind}."
            raise ConfigError(msg) from None
        if self.n < 1:
            msg = f"Problem size must be at least 1, got {self.n}."
            raise ConfigError(msg)
        if self.density is not None and not 0.0 <= self.density <= 1.0:
            msg = f"Problem density must lie in [0, 1], got {self.density}."
            raise ConfigError(msg)
        if self.seed < 0:
            msg = f"Problem seed must be non-negative, got {self.seed}."
            raise ConfigError(msg)
        if (self.a is None) != (self.b is None):
            msg = "Give both penalty weights a and b, or neither."
            raise ConfigError(msg)

    @property
    def weights(self) -> PenaltyWeights:
        if self.a is None or self.b is None:
            return PenaltyWeights.default_for(self.kind)
        return PenaltyWeights(self.a, self.b)

    def describe(self) -> str:
        density = "random" if self.density is None else f"{self.density:g}"
        return f"{self.kind.upper()} n={self.n} density={density} seed={self.seed}"


@dataclass(frozen=True)
class IndicatorConfig(_Section):
    name: ClassVar[str] = "indicator"

    kind: IndicatorKind = IndicatorKind.PI1
    seed: int = 0

    def __post_init__(self):
        try:
            object.__setattr__(self, "kind", IndicatorKind(self.kind))
        except ValueError:
            msg = f"Indicator kind must be one of {[k.value for k in IndicatorKind]}."
            raise ConfigError(msg) from None
        if self.seed < 0:
            msg = f"Indicator seed must be non-negative, got {self.seed}."
            raise ConfigError(msg)


@dataclass(frozen=True)
class ChainStrengthConfig(_Section):
    """`mode: utc` scales uniform torque compensation by `value`; `mode: fixed` uses `value`."""

    name: ClassVar[str] = "chain_strength"

    mode: ChainMode = ChainMode.UTC
    value: float = 1.0

    def __post_init__(self):
        try:
            object.__setattr__(self, "mode", ChainMode(self.mode))
        except ValueError:
            msg = f"chain_strength.mode must be one of {[m.value for m in ChainMode]}."
            raise ConfigError(msg) from None
        if self.value <= 0:
            msg = f"chain_strength.value must be positive, got {self.value}."
            raise ConfigError(msg)

    @property
    def policy(self) -> ChainStrengthPolicy:
        return ChainStrengthPolicy(self.mode, self.value)


@dataclass(frozen=True)
class SamplerConfig(_Section):
    """Backend choice, call count and the per-call sampler parameters."""

    name: ClassVar[str] = "sampler"

    backend: str = "sim"
    calls: int = 2000
    num_reads: int = 100
    sweeps: int = 20
    reduce_intersample_correlation: bool = True
    seed: int = 0
    beta_start_fraction: float = 0.01
    random_sweeps: tuple[int, int] | None = None
    annealing_time: float | None = None
    programming_thermalization: float | None = None
    readout_thermalization: float | None = None
    persist_reads: bool = False

    def __post_init__(self):
        if self.random_sweeps is not None:
            if len(self.random_sweeps) != 2:
                msg = f"sampler.random_sweeps must be a (low, high) pair, got {self.random_sweeps}."
                raise ConfigError(msg)
            object.__setattr__(self, "random_sweeps", tuple(int(s) for s in self.random_sweeps))
        if self.calls < 1:
            msg = f"sampler.calls must be at least 1, got {self.calls}."
            raise ConfigError(msg)
        self.call_config()

    def call_config(self) -> AnnealCallConfig:
        """The per-call parameters, validated."""
        return AnnealCallConfig(
            num_reads=self.num_reads,
            sweeps=self.sweeps,
            reduce_intersample_correlation=self.reduce_intersample_correlation,
            seed=self.seed,
            beta_start_fraction=self.beta_start_fraction,
            random_sweeps=self.random_sweeps,  # type: ignore[arg-type]
            annealing_time=self.annealing_time,
            programming_thermalization=self.programming_thermalization,
            readout_thermalization=self.readout_thermalization,
        )


@dataclass(frozen=True)
class NoiseConfig(_Section):
    """The simulator's drifting inverse temperature. `volatility: 0` disables drift."""

    name: ClassVar[str] = "noise"

    beta_mean: float = 1.0
    reversion: float = 0.005
    volatility: float = 0.03
    dt: float = 1.0
    floor: float = 0.05
    beta0: float | None = None
    seed: int = 0

    def __post_init__(self):
        self.initial_state()

    def initial_state(self) -> NoiseProcessState:
        return NoiseProcessState.create(
            beta_mean=self.beta_mean,
            reversion=self.reversion,
            volatility=self.volatility,
            dt=self.dt,
            floor=self.floor,
            beta0=self.beta0,
            seed=self.seed,
        )


@dataclass(frozen=True)
class AnalysisConfig(_Section):
    """Windows, lags and thresholds of the analysis stage.

    Args:
        window: Moving-average window of the problem-versus-indicator comparison.
        trend_window: Moving-average window of the multi-problem trend analysis.
        adf_lags: Lagged differences in the ADF regression, or "auto".
        acf_lags: Highest lag reported by the ACF and PACF.
        tau: Gate threshold; None calibrates it from the burn-in history.
        tau_quantile: Quantile of the normalized burn-in history used when calibrating.
        burn_in: Calls that only build the indicator history.
        history_cap: Optional ring-buffer size of the history.
        low_cut: Normalized indicator energy at or below which a call counts as low-noise.
        high_cut: Normalized indicator energy at or above which a call counts as high-noise.
        histogram_bins: Bins of the stratified energy histogram.
    """

    name: ClassVar[str] = "analysis"

    window: int = 500
    trend_window: int = 100
    adf_lags: int | Literal["auto"] = "auto"
    acf_lags: int = 40
    tau: float | None = None
    tau_quantile: float = 0.5
    burn_in: int = 10
    history_cap: int | None = None
    low_cut: float = 0.2
    high_cut: float = 0.8
    histogram_bins: int = 20

    def __post_init__(self):
        if self.window < 1 or self.trend_window < 1:
            msg = "Moving-average windows must be at least 1."
            raise ConfigError(msg)
        if self.adf_lags != "auto" and (not isinstance(self.adf_lags, int) or self.adf_lags < 0):
            msg = f"analysis.adf_lags must be 'auto' or an integer >= 0, got {self.adf_lags}."
            raise ConfigError(msg)
        if self.acf_lags < 0:
            msg = f"analysis.acf_lags must be non-negative, got {self.acf_lags}."
            raise ConfigError(msg)
        if self.tau is not None and not 0.0 < self.tau < 1.0:
            msg = f"analysis.tau must lie in (0, 1), got {self.tau}."
            raise ConfigError(msg)
        if not 0.0 < self.tau_quantile < 1.0:
            msg = f"analysis.tau_quantile must lie in (0, 1), got {self.tau_quantile}."
            raise ConfigError(msg)
        if self.burn_in < 1:
            msg = f"analysis.burn_in must be at least 1, got {self.burn_in}."
            raise ConfigError(msg)
        if self.history_cap is not None and self.history_cap < self.burn_in:
            msg = "analysis.history_cap must be at least analysis.burn_in."
            raise ConfigError(msg)
        if not 0.0 <= self.low_cut < self.high_cut <= 1.0:
            msg = f"Cuts must satisfy 0 <= low < high <= 1, got {self.low_cut}, {self.high_cut}."
            raise ConfigError(msg)
        if self.histogram_bins < 1:
            msg = f"analysis.histogram_bins must be at least 1, got {self.histogram_bins}."
            raise ConfigError(msg)


@dataclass(frozen=True)
class OutputConfig(_Section):
    """Run directory. Relative paths resolve under `ANNEALWATCH_OUTPUT_ROOT` or the data dir."""

    name: ClassVar[str] = "output"

    directory: str = "runs/default"


@dataclass(frozen=True)
class ExperimentConfig:
    """A complete, validated experiment description."""

    topology: TopologyConfig = field(default_factory=TopologyConfig)
    embedding: EmbeddingConfig = field(default_factory=EmbeddingConfig)
    problems: tuple[ProblemConfig, ...] = (ProblemConfig(),)
    indicator: IndicatorConfig = field(default_factory=IndicatorConfig)
    chain_strength: ChainStrengthConfig = field(default_factory=ChainStrengthConfig)
    sampler: SamplerConfig = field(default_factory=SamplerConfig)
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    analysis: AnalysisConfig = field(default_factory=AnalysisConfig)
    output: OutputConfig = field(default_factory=OutputConfig)

    def __post_init__(self):
        if not self.problems:
            msg = "An experiment needs at least one problem."
            raise ConfigError(msg)

    _SECTIONS: ClassVar[dict[str, type[_Section]]] = {
        "topology": TopologyConfig,
        "embedding": EmbeddingConfig,
        "indicator": IndicatorConfig,
        "chain_strength": ChainStrengthConfig,
        "sampler": SamplerConfig,
        "noise": NoiseConfig,
        "analysis": AnalysisConfig,
        "output": OutputConfig,
    }

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> ExperimentConfig:
        """Build a config from a parsed document.

        Raises:
            ConfigError: On a wrong schema id, unknown sections or keys, or invalid values.
        """
        data = dict(data)
        schema = data.pop("schema", CONFIG_SCHEMA)
        if schema != CONFIG_SCHEMA:
            msg = f"Unsupported config schema '{schema}'; expected '{CONFIG_SCHEMA}'."
            raise ConfigError(msg)

        unknown = sorted(set(data) - set(cls._SECTIONS) - {"problems"})
        if unknown:
            msg = f"Unknown config {plural('section', len(unknown))}: {unknown}."
            raise ConfigError(msg)

        problems = data.pop("problems", None)
        if problems is None:
            problem_configs: tuple[ProblemConfig, ...] = (ProblemConfig(),)
        elif isinstance(problems, list):
            problem_configs = tuple(ProblemConfig.from_mapping(p) for p in problems)
        else:
            msg = "'problems' must be a list of problem sections."
            raise ConfigError(msg)

        sections = {name: cls._SECTIONS[name].from_mapping(value) for name, value in data.items()}
        return cls(problems=problem_configs, **sections)  # type: ignore[arg-type]

    def to_mapping(self) -> dict[str, Any]:
        mapping: dict[str, Any] = {"schema": CONFIG_SCHEMA}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name == "problems":
                mapping["problems"] = [p.to_mapping() for p in value]
            else:
                mapping[f.name] = value.to_mapping()
        return mapping

    def referenced_files(self) -> list[Path]:
        """Every input file the config points at."""
        paths = [self.topology.path, self.embedding.path, *(p.path for p in self.problems)]
        return [Path(p).expanduser() for p in paths if p]

    def check_files(self) -> None:
        """Raise ConfigError if a referenced input file does not exist."""
        for path in self.referenced_files():
            if not path.is_file():
                msg = f"Config references missing file '{path}'."
                raise ConfigError(msg)


def load_config(
    path: Path | str, overrides: Sequence[str] = (), check_files: bool = True
) -> ExperimentConfig:
    """Read a YAML experiment config and apply `section.key=value` overrides.

    Raises:
        ConfigError: If the file cannot be parsed or the config is invalid.
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as e:
        msg = f"Cannot read config '{path}': {e}"
        raise ConfigError(msg) from e
    if not isinstance(data, dict):
        msg = f"Config '{path}' must be a mapping of sections."
        raise ConfigError(msg)

    cfg = apply_overrides(ExperimentConfig.from_mapping(data), overrides)
    if check_files:
        cfg.check_files()
    return cfg


def dump_config(cfg: ExperimentConfig) -> str:
    """The config as a YAML document, with keys in declaration order."""
    return yaml.safe_dump(cfg.to_mapping(), sort_keys=False, default_flow_style=False)


def save_config(cfg: ExperimentConfig, path: Path | str) -> Path:
    path = Path(path)
    path.write_text(dump_config(cfg), encoding="utf-8")
    return path


def apply_overrides(cfg: ExperimentConfig, overrides: Sequence[str]) -> ExperimentConfig:
    """Apply `section.key=value` assignments; values are parsed as YAML scalars.

    Raises:
        ConfigError: If an override is malformed or names an unknown setting.
    """
    if not overrides:
        return cfg
    data = cfg.to_mapping()
    for item in overrides:
        dotted, sep, raw = item.partition("=")
        if not sep or not dotted.strip():
            msg = f"Override '{item}' must look like section.key=value."
            raise ConfigError(msg)
        try:
            value = yaml.safe_load(raw) if raw.strip() else None
        except yaml.YAMLError as e:
            msg = f"Cannot parse the value of override '{item}': {e}"
            raise ConfigError(msg) from e
        _assign(data, dotted.strip().split("."), value, item)
    return ExperimentConfig.from_mapping(data)


def _assign(data: Any, keys: list[str], value: Any, item: str) -> None:
    *parents, last = keys
    node = data
    for key in parents:
        node = _child(node, key, item)
    if isinstance(node, list):
        node[_index(node, last, item)] = value
    elif isinstance(node, dict) and (last in node or node is not data):
        node[last] = value
    else:
        msg = f"Override '{item}' names an unknown setting."
        raise ConfigError(msg)


def _child(node: Any, key: str, item: str) -> Any:
    if isinstance(node, list):
        return node[_index(node, key, item)]
    if isinstance(node, dict) and isinstance(node.get(key), dict | list):
        return node[key]
    msg = f"Override '{item}' names an unknown setting."
    raise ConfigError(msg)


def _index(node: list[Any], key: str, item: str) -> int:
    try:
        i = int(key)
    except ValueError:
        msg = f"Override '{item}' needs a list index, got '{key}'."
        raise ConfigError(msg) from None
    if i == len(node):
        node.append({})
    if not 0 <= i < len(node):
        msg = f"Override '{item}' index {i} is out of range."
        raise ConfigError(msg)
    return i


def _cell(value: Any, where: str) -> tuple[int, int]:
    try:
        row, col = (int(v) for v in value)
    except (TypeError, ValueError):
        msg = f"{where} must be a (row, col) pair, got {value!r}."
        raise ConfigError(msg) from None
    if row < 0 or col < 0:
        msg = f"{where} must be non-negative, got ({row}, {col})."
        raise ConfigError(msg)
    return row, col


def _plain(value: Any) -> Any:
    """Convert tuples and enums to YAML-safe builtins."""
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, ProblemKind | IndicatorKind | ChainMode):
        return value.value
    return value
