"""Base interface for mixed-integer solver backends."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Optional, Sequence

from ..model.program import LinearProgram
from .branch_bound import MipOutcome


class MipBackend(ABC):
    """Abstract interface for anything that can minimize a :class:`LinearProgram`."""

    name = "abstract"

    @abstractmethod
    def solve(
        self,
        lp: LinearProgram,
        *,
        lower: Optional[Sequence[float]] = None,
        upper: Optional[Sequence[float]] = None,
    ) -> MipOutcome:
        """Solve ``lp`` (optionally with overridden column bounds) and return the outcome."""


__all__ = ["MipBackend"]
