from __future__ import annotations

from pathlib import Path

import pytest

from annealwatch.env import WatchEnv
from annealwatch.experiment import ExperimentConfig
from annealwatch.problems import GraphInstance
from annealwatch.qubo import QuboModel
from annealwatch.topology import chimera

FIXTURES = Path(__file__).parent / "fixtures"
CONFIGS = Path(__file__).parent.parent / "configs"


@pytest.fixture(autouse=True)
def _isolated_output(tmp_path: Path, monkeypatch: pytest.MonkeyPatch):
    """Send relative run directories to a temporary root and keep spinners off."""
    monkeypatch.setenv("ANNEALWATCH_OUTPUT_ROOT", str(tmp_path / "runs"))
    monkeypatch.setenv("ANNEALWATCH_SPINNER", "0")
    WatchEnv().refresh()
    yield
    WatchEnv().refresh()


@pytest.fixture
def small_model() -> QuboModel:
    return QuboModel.from_terms({0: -1.0, 1: 2.0, 2: 0.5}, {(0, 1): -3.0, (1, 2): 1.5})


@pytest.fixture
def triangle() -> GraphInstance:
    return GraphInstance.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def chimera2():
    return chimera(2)


@pytest.fixture
def chimera4():
    return chimera(4)


@pytest.fixture
def smoke_mapping() -> dict:
    """The smoke experiment: maximum clique on K_6 in a 2x2 Chimera chip, 50 calls of 20 reads."""
    return {
        "topology": {"kind": "chimera", "m": 2, "t": 4},
        "embedding": {"k": 6},
        "problems": [{"kind": "mc", "n": 6, "density": 0.5, "seed": 1}],
        "indicator": {"kind": "pi1", "seed": 2},
        "sampler": {"calls": 50, "num_reads": 20, "sweeps": 10, "seed": 3},
        "noise": {"volatility": 0.03, "seed": 4},
        "analysis": {
            "window": 10,
            "trend_window": 10,
            "acf_lags": 10,
            "burn_in": 5,
            "histogram_bins": 10,
        },
        "output": {"directory": "smoke"},
    }


@pytest.fixture
def smoke_config(smoke_mapping: dict) -> ExperimentConfig:
    return ExperimentConfig.from_mapping(smoke_mapping)
