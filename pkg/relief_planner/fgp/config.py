"""Runtime options for the goal-programming pipeline."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from ..model.objectives import OBJECTIVE_IDS


@dataclass
class FgpConfig:
    objectives: Tuple[int, ...] = OBJECTIVE_IDS
    backend: Optional[str] = None
    strict_eq5: bool = False
    jobs: int = 1


__all__ = ["FgpConfig"]
