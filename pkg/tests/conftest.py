"""Pytest configuration and fixtures."""

from pathlib import Path

import pytest

from girthguard.config import (
    BB_MAX_N_ENV_VAR,
    BRUTE_GUARD_ENV_VAR,
    BRUTE_MAX_N_ENV_VAR,
    CONFIG_FILE_ENV_VAR,
    JOBS_ENV_VAR,
    SHARP_BATCH_ENV_VAR,
    SHARP_SEED_ENV_VAR,
)
from girthguard.generators import gen_cycle
from girthguard.graph import Graph, emit_edge_list

SETTING_ENV_VARS = (
    CONFIG_FILE_ENV_VAR,
    BRUTE_MAX_N_ENV_VAR,
    BB_MAX_N_ENV_VAR,
    BRUTE_GUARD_ENV_VAR,
    SHARP_BATCH_ENV_VAR,
    SHARP_SEED_ENV_VAR,
    JOBS_ENV_VAR,
)


@pytest.fixture(autouse=True)
def clean_settings_env(monkeypatch):
    """Start every test from the built-in defaults."""
    for key in SETTING_ENV_VARS:
        # setenv first so values written during the test are undone afterwards
        monkeypatch.setenv(key, "")
        monkeypatch.delenv(key)


@pytest.fixture
def c6():
    return gen_cycle(6)


@pytest.fixture
def c7():
    return gen_cycle(7)


@pytest.fixture
def c12():
    return gen_cycle(12)


@pytest.fixture
def two_triangles():
    """Two disjoint triangles (girth 3, disconnected)."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def write_graph_file(tmp_path):
    """Write a graph (or raw text) to a temporary edge-list file."""

    def _write(graph: Graph | str, name: str = "graph.txt") -> Path:
        path = tmp_path / name
        text = graph if isinstance(graph, str) else emit_edge_list(graph)
        path.write_text(text, encoding="utf-8")
        return path

    return _write
