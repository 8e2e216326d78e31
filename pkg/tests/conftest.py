from __future__ import annotations

import pytest

from core import db
from core.config import settings
from services.diagrams import diagram_to_graph, young_diagram
from services.generators import path, star
from services.graphs import BipartiteGraph, Color, dump_graph_json

W, B = Color.WHITE, Color.BLACK


@pytest.fixture(autouse=True)
def restore_settings():
    """CLI flags mutate the settings singleton; put it back after every test."""
    saved = dict(vars(settings))
    yield
    vars(settings).clear()
    vars(settings).update(saved)


@pytest.fixture
def isolated_registry(tmp_path, monkeypatch):
    """Check runs go to a throwaway SQLite file and report folder."""
    monkeypatch.setattr(settings, "ENV", "local")
    monkeypatch.setattr(settings, "REPORT_ROOT", str(tmp_path / "reports"))
    db.rebind(f"sqlite:///{tmp_path / 'runs.db'}")
    db.init_db()
    yield tmp_path
    db.rebind(settings.DB_URL)


@pytest.fixture
def p3() -> BipartiteGraph:
    return path(3)


@pytest.fixture
def p4() -> BipartiteGraph:
    return path(4)


@pytest.fixture
def c4() -> BipartiteGraph:
    return diagram_to_graph(young_diagram([2, 2]))


@pytest.fixture
def black_star2() -> BipartiteGraph:
    return star(2, B)


@pytest.fixture
def two_edges() -> BipartiteGraph:
    return BipartiteGraph({1: W, 2: B, 3: W, 4: B}, [(1, 2), (3, 4)])


@pytest.fixture
def graph_files(tmp_path, p3, c4):
    files = {
        "p3": tmp_path / "p3.json",
        "c4": tmp_path / "c4.json",
        "t3": tmp_path / "t3.json",
        "row2": tmp_path / "row2.txt",
    }
    files["p3"].write_text(dump_graph_json(p3))
    files["c4"].write_text(dump_graph_json(c4))
    files["t3"].write_text(dump_graph_json(star(3)))
    files["row2"].write_text("##\n")
    return {k: str(v) for k, v in files.items()}
