from __future__ import annotations

import pytest

from annealwatch.core import FileFormatError, TopologyError
from annealwatch.topology import (
    HORIZONTAL,
    VERTICAL,
    ChimeraShape,
    apply_defects,
    chimera,
    chimera_coordinates,
    chimera_index,
    export_graph,
    idle_region,
    import_graph,
)

from .conftest import FIXTURES


@pytest.mark.parametrize(("m", "t"), [*((m, 4) for m in range(1, 17)), (3, 2), (5, 1)])
def test_chimera_counts(m: int, t: int):
    g = chimera(m, t)
    assert len(g.nodes) == 2 * t * m * m
    assert len(g.couplers) == t * t * m * m + 2 * t * m * (m - 1)
    assert g.kind == ChimeraShape(m, t)


def test_chimera_degrees():
    g = chimera(4)
    degrees = {g.degree(q) for q in g.nodes}
    assert degrees == {5, 6}


def test_cell_is_complete_bipartite():
    g = chimera(2)
    for k in range(4):
        v = chimera_index(0, 0, VERTICAL, k, 2)
        for kk in range(4):
            assert g.has_coupler(v, chimera_index(0, 0, HORIZONTAL, kk, 2))
        assert not g.has_coupler(v, chimera_index(0, 0, VERTICAL, (k + 1) % 4, 2))


def test_coordinates_invert_index():
    for q in range(128):
        assert chimera_index(*chimera_coordinates(q, 4), m=4) == q


def test_chimera_rejects_bad_shape():
    with pytest.raises(TopologyError):
        chimera(0)


def test_defects_remove_qubits_and_couplers(chimera2):
    g = apply_defects(chimera2, {3})
    assert 3 not in g.nodes
    assert g.defects == frozenset({3})
    assert all(3 not in c for c in g.couplers)
    with pytest.raises(TopologyError):
        apply_defects(g, {3})


def test_idle_region_shares_no_qubit_or_coupler(chimera2):
    used = set(range(8))
    region = idle_region(chimera2, used)
    assert region.nodes == chimera2.nodes - used
    assert all(u not in used and v not in used for u, v in region.couplers)
    assert len(region.components()) == 1


def test_idle_region_errors(chimera2):
    with pytest.raises(TopologyError, match="every qubit"):
        idle_region(chimera2, chimera2.nodes)
    with pytest.raises(TopologyError, match="not a working qubit"):
        idle_region(chimera2, {999})


def test_export_import_keeps_kind_and_defects(tmp_path):
    g = apply_defects(chimera(2), {5, 17})
    loaded = import_graph(export_graph(g, tmp_path / "g.txt"))
    assert loaded == g
    assert loaded.kind == ChimeraShape(2, 4)


def test_import_working_graph_fixture():
    g = import_graph(FIXTURES / "working_graph.txt")
    assert g.kind is None
    assert len(g.nodes) == 12
    assert g.defects == frozenset({12})
    assert "imported" in g.describe()


@pytest.mark.parametrize(
    "text",
    ["n 0\n", "hw 1\nn 0\nc 0 1\n", "hw 2\nn 0\n", "hw 1\nn 0\nx 1\n", "hw 2\nn 0\nn 1\nc 1 1\n"],
)
def test_bad_graph_files(tmp_path, text: str):
    path = tmp_path / "bad.txt"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(FileFormatError):
        import_graph(path)
