"""Exception hierarchy shared by the planner packages."""
from __future__ import annotations

from typing import Any, Dict, Optional


class ReliefPlannerError(Exception):
    """Base class for every error raised by relief_planner."""


class InstanceError(ReliefPlannerError):
    """Instance document is structurally unusable."""

    def __init__(self, code: str, message: str) -> None:
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class InstanceSyntaxError(InstanceError):
    """Instance document is not well-formed JSON."""

    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__("syntax_error", f"line {line} column {column}: {message}")
        self.line = line
        self.column = column


class ModelSizeError(ReliefPlannerError):
    """Assembled model would exceed the configured nonzero cap."""


class SizeGuardError(ReliefPlannerError):
    """Exhaustive enumeration would exceed its guard."""


class DimensionError(ReliefPlannerError):
    """Solution references entities or periods that the instance does not declare."""


class WeightError(ReliefPlannerError):
    """Objective weights are not on the unit simplex."""


class SolverError(ReliefPlannerError):
    """A solve did not reach a usable optimum."""

    def __init__(self, message: str, *, status: str, diagnostics: Optional[Dict[str, Any]] = None) -> None:
        super().__init__(message)
        self.status = status
        self.diagnostics = diagnostics or {}


__all__ = [
    "ReliefPlannerError",
    "InstanceError",
    "InstanceSyntaxError",
    "ModelSizeError",
    "SizeGuardError",
    "DimensionError",
    "WeightError",
    "SolverError",
]
