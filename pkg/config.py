"""Central configuration for the affine flip-action toolkit."""
from __future__ import annotations

import os
from pathlib import Path

# Base paths
BASE_DIR: Path = Path(__file__).resolve().parent
DATA_DIR: Path = BASE_DIR / "data"
LOG_DIR: Path = Path(os.getenv("AFFINE_FLIP_LOG_DIR", BASE_DIR / "log"))

# Output directories
OUTPUT_DIR: Path = Path(os.getenv("AFFINE_FLIP_OUTPUT_DIR", DATA_DIR / "reports"))
GRAPH_DIR: Path = OUTPUT_DIR / "graphs"

# Files
LOG_FILE: Path = LOG_DIR / "app.log"
LOG_LEVEL: str = os.getenv("AFFINE_FLIP_LOG_LEVEL", "INFO")

# Limits and defaults
NODE_CAP: int = int(os.getenv("AFFINE_FLIP_NODE_CAP", "1000000"))
D_BOUND: int = int(os.getenv("AFFINE_FLIP_D_BOUND", "4"))
COVERAGE_MARGIN: int = int(os.getenv("AFFINE_FLIP_MARGIN", "1"))
WORKERS: int = max(1, int(os.getenv("AFFINE_FLIP_WORKERS", "1")))
WINDOW_LIMIT: int = 2**62  # |window entry| guard, mirrors signed 64-bit storage

MODELS = ("omega", "omega_signed", "arc", "ctft", "lf", "gc")
GROUP_TYPES = ("C", "B")
FORMATS = ("json", "dot", "text", "markdown", "html")


def ensure_directories() -> None:
    """Create output directories and placeholder log file."""
    for path in (DATA_DIR, LOG_DIR, OUTPUT_DIR, GRAPH_DIR):
        path.mkdir(parents=True, exist_ok=True)
    LOG_FILE.touch(exist_ok=True)
