"""Fuzzy goal programming over the four planning objectives."""
from .config import FgpConfig
from .ideal import IdealPoint, compute_nis, compute_pis, solve_single
from .master import MASTER_FAMILY, FgpResult, solve_master
from .membership import is_degenerate, membership, validate_weights

__all__ = [
    "MASTER_FAMILY",
    "FgpConfig",
    "FgpResult",
    "IdealPoint",
    "compute_nis",
    "compute_pis",
    "is_degenerate",
    "membership",
    "solve_master",
    "solve_single",
    "validate_weights",
]
