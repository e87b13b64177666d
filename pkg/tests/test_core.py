from __future__ import annotations

import logging
from pathlib import Path

import numpy as np
import pytest

from annealwatch.core import (
    AnnealWatchError,
    CapacityError,
    ConfigError,
    EmbeddingError,
    FileFormatError,
    StageError,
    Stream,
    derive_seed,
    plural,
    substream,
)
from annealwatch.env import WatchEnv
from annealwatch.log import WatchLog
from annealwatch.log.formatters import CustomFormatter, FileFormatter
from annealwatch.paths import RunPaths


def test_substream_is_reproducible():
    a = substream(7, Stream.READS, 3, 1).random(5)
    b = substream(7, Stream.READS, 3, 1).random(5)
    np.testing.assert_array_equal(a, b)


def test_substreams_differ_by_tag_and_key():
    base = substream(7, Stream.READS, 3).random(4)
    assert not np.array_equal(base, substream(7, Stream.NOISE, 3).random(4))
    assert not np.array_equal(base, substream(7, Stream.READS, 4).random(4))
    assert not np.array_equal(base, substream(8, Stream.READS, 3).random(4))


def test_substream_rejects_negative_keys():
    with pytest.raises(ValueError, match="non-negative"):
        substream(-1, Stream.READS)
    with pytest.raises(ValueError, match="non-negative"):
        substream(1, Stream.READS, -2)


def test_derive_seed_is_stable_integer():
    seed = derive_seed(5, Stream.GRAPH, 1)
    assert isinstance(seed, int)
    assert 0 <= seed < 2**63
    assert seed == derive_seed(5, Stream.GRAPH, 1)


@pytest.mark.parametrize(
    ("word", "count", "with_count", "expected"),
    [
        ("call", 1, True, "1 call"),
        ("call", 0, True, "0 calls"),
        ("read", 3, False, "reads"),
        ("bias", 2, False, "biases"),
    ],
)
def test_plural(word: str, count: int, with_count: bool, expected: str):
    assert plural(word, count, with_count=with_count) == expected


def test_error_hierarchy_keeps_builtin_bases():
    assert issubclass(ConfigError, ValueError)
    assert issubclass(CapacityError, EmbeddingError)
    assert issubclass(StageError, AnnealWatchError)


def test_capacity_error_names_limit():
    e = CapacityError(20, 16)
    assert (e.requested, e.max_k) == (20, 16)
    assert "K_20" in str(e)
    assert "K_16" in str(e)


def test_file_format_error_locates_line(tmp_path):
    e = FileFormatError(tmp_path / "x.txt", 4, "bad field")
    assert str(e).endswith("x.txt:4: bad field")


def test_stage_error_formats_stage_and_cause():
    cause = ConfigError("calls must be positive")
    e = StageError("sample", cause)
    assert str(e) == "[sample] calls must be positive"
    assert e.cause is cause


def test_env_reads_overrides(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("ANNEALWATCH_LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("ANNEALWATCH_SPINNER", "off")
    env = WatchEnv()
    env.refresh()
    assert env.log_level == "DEBUG"
    assert env.spinner is False


def test_env_rejects_bad_bool(monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("ANNEALWATCH_SPINNER", "maybe")
    env = WatchEnv()
    env.refresh()
    with pytest.raises(ConfigError, match="ANNEALWATCH_SPINNER"):
        env.get("ANNEALWATCH_SPINNER")


def _record(msg: str, **extra: object) -> logging.LogRecord:
    record = logging.LogRecord("annealwatch.test", logging.WARNING, __file__, 1, msg, (), None)
    record.__dict__.update(extra)
    return record


def test_formatters_tag_stage():
    record = _record("Chain broke.", stage="sample")
    assert CustomFormatter(simple=True, color=False).format(record) == "[sample] Chain broke."
    assert FileFormatter().format(record).endswith("annealwatch.test: [sample] Chain broke.")
    assert CustomFormatter(simple=True, color=False).format(_record("Plain.")) == "Plain."


def test_run_log_attaches_and_detaches(tmp_path: Path):
    logger = WatchLog.get_logger("annealwatch.testing")
    log_file = tmp_path / "run.log"
    WatchLog.attach_file(log_file, prefix="annealwatch.testing")
    logger.warning("Recorded %s.", plural("call", 2, with_count=True), extra={"stage": "sample"})
    WatchLog.detach_files(prefix="annealwatch.testing")
    logger.warning("Not recorded.")
    text = log_file.read_text()
    assert "[sample] Recorded 2 calls." in text
    assert "Not recorded" not in text


def test_set_level_reaches_package_loggers():
    logger = WatchLog.get_logger("annealwatch.leveled")
    WatchLog.set_level("DEBUG", prefix="annealwatch.leveled")
    assert logger.level == logging.DEBUG
    WatchLog.set_level("INFO", prefix="annealwatch.leveled")
    assert logger.level == logging.INFO


def test_run_paths_resolve_under_output_root(tmp_path: Path):
    paths = RunPaths()
    run_dir = paths.run_dir("runs/a")
    assert run_dir == tmp_path / "runs" / "runs" / "a"
    assert run_dir.is_dir()
    assert paths.run_dir(tmp_path / "abs") == tmp_path / "abs"
    assert RunPaths(create_dirs=False).existing_run("runs/a") == run_dir
    with pytest.raises(FileNotFoundError):
        RunPaths(create_dirs=False).existing_run("runs/missing")
