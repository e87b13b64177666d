from __future__ import annotations

import csv
import json
from typing import TYPE_CHECKING

import pytest

from annealwatch.cli import ArgParser, call_progress, package_version
from annealwatch.cli.main import main
from annealwatch.env import WatchEnv
from annealwatch.monitor import STORE_SCHEMA, load_store
from annealwatch.topology import chimera, import_graph

from .conftest import CONFIGS, FIXTURES

if TYPE_CHECKING:
    from pathlib import Path

SMOKE = str(CONFIGS / "smoke.yaml")


def run_cli(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli_run(capsys: pytest.CaptureFixture[str]) -> str:
    code, out, _ = run_cli(
        capsys, "run", SMOKE, "-q", "--output-dir", "cli", "--set", "sampler.calls=30"
    )
    assert code == 0
    return out.strip()


def test_version(capsys: pytest.CaptureFixture[str]):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert capsys.readouterr().out.startswith("annealwatch")
    assert package_version().startswith("annealwatch")


def test_help_lowercases_option_help():
    parser = ArgParser(prog="demo", description="First line.\nstill first.\n\nSecond.", lines=1)
    parser.add_argument("--flag", help="Turn it on")
    parser.add_argument("--name", help="Keep Caps", keep_caps=True)
    text = parser.format_help()
    assert "turn it on" in text
    assert "Keep Caps" in text
    assert "First line. still first." in text
    assert "Second." not in text


def test_topology(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    out_file = tmp_path / "graph.txt"
    code, out, _ = run_cli(capsys, "topology", "-m", "2", "--defects", "3", "-o", str(out_file))
    assert code == 0
    assert "31 qubits" in out
    assert "1 defective" in out
    g = import_graph(out_file)
    assert len(g.nodes) == 31
    assert len(g.couplers) == len(chimera(2).couplers) - 5


def test_topology_from_file(capsys: pytest.CaptureFixture[str]):
    code, out, _ = run_cli(capsys, "topology", "--graph", str(FIXTURES / "working_graph.txt"))
    assert code == 0
    assert out.startswith("imported: 12 qubits, 20 couplers")


def test_embed_largest_clique(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    out_file = tmp_path / "k8.txt"
    code, out, _ = run_cli(capsys, "embed", "-m", "2", "-o", str(out_file))
    assert code == 0
    assert out.startswith("K_8 on ")
    assert out_file.read_text().startswith("em 8")

    code, out, _ = run_cli(capsys, "embed", "-m", "2", "--check", str(out_file))
    assert code == 0
    assert "valid K_8 embedding" in out


def test_embed_check_imported(capsys: pytest.CaptureFixture[str]):
    code, out, _ = run_cli(
        capsys,
        "embed",
        "--graph",
        str(FIXTURES / "working_graph.txt"),
        "--check",
        str(FIXTURES / "k4_embedding.txt"),
    )
    assert code == 0
    assert "valid K_4 embedding, longest chain 2" in out


def test_embed_too_large(capsys: pytest.CaptureFixture[str]):
    code, _, err = run_cli(capsys, "embed", "-m", "2", "-k", "9")
    assert code == 1
    assert "K_8" in err


def test_bad_graph_file(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    bad = tmp_path / "bad.txt"
    bad.write_text("hw 2\nn 0\nc 0 1\n")
    code, _, err = run_cli(capsys, "topology", "--graph", str(bad))
    assert code == 1
    assert "[topology]" in err


def test_run_prints_run_dir(cli_run: str, tmp_path: Path):
    assert cli_run == str(tmp_path / "runs" / "cli")
    with (tmp_path / "runs" / "cli" / "raw.csv").open() as f:
        assert sum(1 for _ in f) == 31


def test_run_stage_failure(capsys: pytest.CaptureFixture[str]):
    code, _, err = run_cli(capsys, "run", SMOKE, "-q", "--set", "embedding.k=20")
    assert code == 1
    assert "[embed] " in err


def test_run_bad_override(capsys: pytest.CaptureFixture[str]):
    code, _, err = run_cli(capsys, "run", SMOKE, "-q", "--set", "sampler.nope=1")
    assert code == 1
    assert "[config] " in err


def test_wrong_experiment_for_config(capsys: pytest.CaptureFixture[str]):
    code, _, err = run_cli(capsys, "trend", SMOKE, "-q", "--output-dir", "x")
    assert code == 1
    assert "[config]" in err


def test_analyze(cli_run: str, capsys: pytest.CaptureFixture[str]):
    code, out, _ = run_cli(capsys, "analyze", "cli")
    assert code == 0
    report = json.loads(out)
    assert report["calls"] == 30

    code, out, _ = run_cli(capsys, "analyze", cli_run, "--set", "analysis.window=3")
    assert code == 0
    assert json.loads(out)["window"] == 3


def test_analyze_missing_run(capsys: pytest.CaptureFixture[str]):
    code, _, err = run_cli(capsys, "analyze", "nowhere")
    assert code == 1
    assert "nowhere" in err


def test_monitor_gate(cli_run: str, capsys: pytest.CaptureFixture[str], tmp_path: Path):
    table, store = tmp_path / "gate.csv", tmp_path / "store.json"
    code, out, _ = run_cli(
        capsys,
        "monitor",
        cli_run,
        "--burn-in",
        "5",
        "-o",
        str(table),
        "--save-store",
        str(store),
    )
    assert code == 0
    assert out.startswith("threshold ")
    with table.open() as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["call", "phase", "problem", "indicator", "normalized_e", "accept"]
    assert len(rows) == 31
    assert json.loads(store.read_text())["schema"] == STORE_SCHEMA
    assert len(load_store(store)) == 30

    code, out, _ = run_cli(capsys, "monitor", cli_run, "--store", str(store), "--tau", "0.5")
    assert code == 0
    assert "gated 30" in out


def test_monitor_annotate(cli_run: str, capsys: pytest.CaptureFixture[str], tmp_path: Path):
    out_file = tmp_path / "ranks.csv"
    raw = f"{cli_run}/raw.csv"
    code, _, _ = run_cli(
        capsys, "monitor", raw, "--annotate", "--burn-in", "3", "-o", str(out_file)
    )
    assert code == 0
    with out_file.open() as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["call", "indicator", "percentile"]
    assert [r[2] for r in rows[1:4]] == ["", "", ""]
    assert all(0.0 <= float(r[2]) <= 1.0 for r in rows[4:])


def test_monitor_needs_single_problem(capsys: pytest.CaptureFixture[str], tmp_path: Path):
    raw = tmp_path / "raw.csv"
    raw.write_text("call,problem_0,problem_1,indicator\n0,1,2,3\n")
    code, _, err = run_cli(capsys, "monitor", str(raw))
    assert code == 1
    assert "[monitor]" in err


def test_monitor_missing_source(capsys: pytest.CaptureFixture[str]):
    code, _, err = run_cli(capsys, "monitor", "nowhere")
    assert code == 1
    assert "[monitor]" in err
    assert "nowhere" in err


def test_export(cli_run: str, capsys: pytest.CaptureFixture[str]):
    code, out, _ = run_cli(capsys, "export", cli_run, "timeseries", "acf")
    assert code == 0
    assert out.split() == [f"{cli_run}/plots/timeseries.csv", f"{cli_run}/plots/acf.csv"]

    code, out, _ = run_cli(capsys, "export", cli_run)
    assert code == 0
    assert len(out.split()) == 5


def test_export_unknown_plot(cli_run: str, capsys: pytest.CaptureFixture[str]):
    code, _, err = run_cli(capsys, "export", cli_run, "pie")
    assert code == 1
    assert "[export] Unknown plot id 'pie'" in err


def test_invalid_environment(capsys: pytest.CaptureFixture[str], monkeypatch: pytest.MonkeyPatch):
    monkeypatch.setenv("ANNEALWATCH_SPINNER", "sometimes")
    WatchEnv().refresh()
    code, _, err = run_cli(capsys, "topology", "-m", "1")
    assert code == 1
    assert "ANNEALWATCH_SPINNER" in err


def test_progress_is_silent_without_terminal(monkeypatch: pytest.MonkeyPatch):
    with call_progress("run") as progress:
        assert progress is None
    monkeypatch.setenv("ANNEALWATCH_SPINNER", "1")
    WatchEnv().refresh()
    with call_progress("run", show=False) as progress:
        assert progress is None
