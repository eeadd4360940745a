"""Configuration helpers for the relief planner."""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional


@dataclass
class Settings:
    """Runtime settings loaded from environment variables."""

    backend: str
    embedded_max_columns: int
    node_limit: int
    iteration_limit: int
    max_nonzeros: int
    oracle_max_points: int
    time_limit: Optional[float] = None


@lru_cache(maxsize=1)
def load_settings() -> Settings:
    """Load settings from environment variables once per process."""

    backend = os.getenv("RELIEF_BACKEND", "auto").strip().lower()
    if backend not in {"auto", "embedded", "highs"}:
        backend = "auto"

    return Settings(
        backend=backend,
        embedded_max_columns=int(os.getenv("RELIEF_EMBEDDED_MAX_COLUMNS", "400")),
        node_limit=int(os.getenv("RELIEF_NODE_LIMIT", "1000000")),
        iteration_limit=int(os.getenv("RELIEF_ITERATION_LIMIT", "100000")),
        max_nonzeros=int(os.getenv("RELIEF_MAX_NONZEROS", "5000000")),
        oracle_max_points=int(os.getenv("RELIEF_ORACLE_MAX_POINTS", "100000")),
        time_limit=float(os.getenv("RELIEF_TIME_LIMIT")) if os.getenv("RELIEF_TIME_LIMIT") else None,
    )


__all__ = ["Settings", "load_settings"]
