"""Independent solution verification.

The brute-force oracles live in :mod:`relief_planner.checker.oracle`, which is
not imported here because it builds models.
"""
from .feasibility import CheckReport, RowViolation, check, check_dimensions, evaluate_objectives
from .solution import FAMILIES, Solution
from .worst_case import MAX_UNCERTAIN_PERIODS, served_to_date, worst_case_deviation, worst_case_shortfall

__all__ = [
    "FAMILIES",
    "MAX_UNCERTAIN_PERIODS",
    "CheckReport",
    "RowViolation",
    "Solution",
    "check",
    "check_dimensions",
    "evaluate_objectives",
    "served_to_date",
    "worst_case_deviation",
    "worst_case_shortfall",
]
