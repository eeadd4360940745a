"""LP/MILP solvers and backend selection."""
from __future__ import annotations

import logging
from typing import Optional

from ..config import Settings, load_settings
from ..model.program import LinearProgram
from .base import MipBackend
from .branch_bound import NODE_LIMIT, BranchBoundConfig, MipOutcome, solve_mip
from .embedded_backend import EmbeddedBackend
from .highs_backend import HighsBackend
from .simplex import (
    INFEASIBLE,
    ITERATION_LIMIT,
    OPTIMAL,
    UNBOUNDED,
    LpOutcome,
    SimplexConfig,
    solve_dense,
    solve_lp,
)

logger = logging.getLogger(__name__)

BACKENDS = ("auto", "embedded", "highs")


def build_backend(
    name: Optional[str] = None,
    *,
    lp: Optional[LinearProgram] = None,
    settings: Optional[Settings] = None,
    config: Optional[BranchBoundConfig] = None,
) -> MipBackend:
    """Instantiate a backend; ``auto`` picks the embedded core for small models."""

    settings = settings or load_settings()
    choice = (name or settings.backend).lower()
    if choice not in BACKENDS:
        raise ValueError(f"unknown backend {choice!r}; expected one of {BACKENDS}")
    if choice == "auto":
        small = lp is not None and lp.num_columns <= settings.embedded_max_columns
        choice = "embedded" if small else "highs"
        logger.debug("Backend auto-selected: %s", choice)
    if choice == "embedded":
        cfg = config or BranchBoundConfig(node_limit=settings.node_limit)
        return EmbeddedBackend(config=cfg)
    return HighsBackend(time_limit=settings.time_limit, node_limit=settings.node_limit)


__all__ = [
    "BACKENDS",
    "INFEASIBLE",
    "ITERATION_LIMIT",
    "NODE_LIMIT",
    "OPTIMAL",
    "UNBOUNDED",
    "BranchBoundConfig",
    "EmbeddedBackend",
    "HighsBackend",
    "LpOutcome",
    "MipBackend",
    "MipOutcome",
    "SimplexConfig",
    "build_backend",
    "solve_dense",
    "solve_lp",
    "solve_mip",
]
