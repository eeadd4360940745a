"""Backend running the in-package simplex and branch and bound."""
from __future__ import annotations

from typing import Optional, Sequence

from ..model.program import LinearProgram
from .base import MipBackend
from .branch_bound import BranchBoundConfig, MipOutcome, solve_mip


class EmbeddedBackend(MipBackend):
    """Dense tableau core; suited to models with a few hundred columns."""

    name = "embedded"

    def __init__(self, config: Optional[BranchBoundConfig] = None) -> None:
        self.config = config or BranchBoundConfig()

    def solve(
        self,
        lp: LinearProgram,
        *,
        lower: Optional[Sequence[float]] = None,
        upper: Optional[Sequence[float]] = None,
    ) -> MipOutcome:
        outcome = solve_mip(lp, lower=lower, upper=upper, config=self.config)
        outcome.backend = self.name
        return outcome


__all__ = ["EmbeddedBackend"]
