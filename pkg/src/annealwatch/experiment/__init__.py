"""Experiment runs: configuration, device program assembly, sampling, analysis and export.

A run is fully described by one YAML config. The three experiments differ in what shares the
chip with the indicator: one problem (`run_experiment`), several problems side by side
(`run_parallel_trend`), or two problems taking turns on the same qubits (`run_alternating`).

```python
from annealwatch.experiment import export_plot_data, load_config, run_experiment

cfg = load_config("configs/smoke.yaml", overrides=["sampler.calls=200"])
artifacts = run_experiment(cfg)
artifacts.report.pearson
export_plot_data(artifacts.run_dir, "timeseries")
```
"""

from __future__ import annotations

from .analysis import (
    AnalysisResult,
    analyze_table,
    correlation_table,
    effective_window,
    gate_and_stratify,
    series_correlations,
    write_analysis,
)
from .artifacts import (
    ACF_FILE,
    CONFIG_FILE,
    GATE_FILE,
    LOG_FILE,
    RAW_FILE,
    READS_FILE,
    STATS_FILE,
    STRATA_FILE,
    RawTable,
    RawWriter,
    RunArtifacts,
    RunMode,
    read_raw,
    write_table,
)
from .config import (
    CONFIG_SCHEMA,
    AnalysisConfig,
    ChainStrengthConfig,
    EmbeddingConfig,
    ExperimentConfig,
    IndicatorConfig,
    NoiseConfig,
    OutputConfig,
    ProblemConfig,
    SamplerConfig,
    TopologyConfig,
    apply_overrides,
    dump_config,
    load_config,
    save_config,
)
from .export import PLOTS, PLOTS_DIR, export_plot_data
from .program import (
    CallScores,
    DeviceProgram,
    assemble_program,
    build_hardware,
    build_problem,
    place_problems,
    quadrant_origins,
)
from .runner import (
    analyze_raw,
    create_backend,
    run_alternating,
    run_experiment,
    run_parallel_trend,
    stage,
)
