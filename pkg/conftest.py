import pytest

import config


@pytest.fixture
def output_dirs(tmp_path, monkeypatch):
    """Point report and graph output at a temporary directory."""
    monkeypatch.setattr(config, "OUTPUT_DIR", tmp_path / "reports")
    monkeypatch.setattr(config, "GRAPH_DIR", tmp_path / "reports" / "graphs")
    return tmp_path / "reports"
