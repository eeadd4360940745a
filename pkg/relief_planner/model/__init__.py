"""Robust MILP assembly: columns, objectives, constraint families."""
from .builder import assemble, build_columns, build_structure
from .constraints import (
    STRUCTURAL_FAMILIES,
    emit_commodity_constraints,
    emit_injury_constraints,
    emit_robust_dual_constraints,
    emit_vehicle_constraints,
    family_counts,
)
from .decode import decode_solution, encode_solution
from .lp_text import write_lp_text
from .objectives import OBJECTIVE_IDS, OBJECTIVE_NAMES, ObjectiveVector, build_objective, build_objectives
from .program import BINARY, CONTINUOUS, EQ, GE, INTEGER, LE, LinearProgram, Row, VariableIndex

__all__ = [
    "BINARY",
    "CONTINUOUS",
    "EQ",
    "GE",
    "INTEGER",
    "LE",
    "OBJECTIVE_IDS",
    "OBJECTIVE_NAMES",
    "STRUCTURAL_FAMILIES",
    "LinearProgram",
    "ObjectiveVector",
    "Row",
    "VariableIndex",
    "assemble",
    "build_columns",
    "build_objective",
    "build_objectives",
    "build_structure",
    "decode_solution",
    "emit_commodity_constraints",
    "emit_injury_constraints",
    "emit_robust_dual_constraints",
    "emit_vehicle_constraints",
    "encode_solution",
    "family_counts",
    "write_lp_text",
]
