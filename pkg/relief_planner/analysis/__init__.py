"""Sensitivity sweeps, shortfall series, frontiers and route tables."""
from .curve import effectiveness_curve
from .export import write_csv, write_json
from .robustness import DEFAULT_SCALES, gamma_sweep
from .routes import ROUTE_COLUMNS, route_table
from .series import SERIES_COLUMNS, series_value, shortfall_series
from .sweep import SweepConfig, SweepTable, simplex_grid, weight_sweep

__all__ = [
    "DEFAULT_SCALES",
    "ROUTE_COLUMNS",
    "SERIES_COLUMNS",
    "SweepConfig",
    "SweepTable",
    "effectiveness_curve",
    "gamma_sweep",
    "route_table",
    "series_value",
    "shortfall_series",
    "simplex_grid",
    "weight_sweep",
    "write_csv",
    "write_json",
]
