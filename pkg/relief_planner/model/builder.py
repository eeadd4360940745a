"""Assembly of the robust MILP from an instance."""
from __future__ import annotations

import logging
from typing import Optional, Tuple

from ..config import load_settings
from ..instance import Instance, arcs
from .constraints import (
    STRUCTURAL_FAMILIES,
    emit_commodity_constraints,
    emit_injury_constraints,
    emit_robust_dual_constraints,
    emit_vehicle_constraints,
    family_counts,
)
from .objectives import build_objective
from .program import BINARY, INTEGER, LinearProgram, VariableIndex

logger = logging.getLogger(__name__)


def _register(lp: LinearProgram, vix: VariableIndex, coordinate: tuple, *, upper: float = float("inf"), kind: str = "continuous") -> int:
    column = vix.register(coordinate)
    lp.add_column("_".join(str(part) for part in coordinate), upper=upper, kind=kind)
    return column


def build_columns(inst: Instance, lp: LinearProgram) -> VariableIndex:
    """Register every column family in a fixed order; the order is part of the model contract.

    Loads and patients only ride trips that arrive by the last period.
    """

    vix = VariableIndex()
    periods = list(inst.period_range)
    arc_list = arcs(inst)
    vehicles = {v.id: v for v in inst.vehicles}

    for h in inst.injuries:
        for r in inst.demand_nodes:
            for t in periods:
                _register(lp, vix, ("dev_injury", h.id, r, t))
    for a in inst.commodities:
        for p in inst.demand_nodes:
            for t in periods:
                _register(lp, vix, ("dev_commodity", a.id, p, t))
    for h in inst.injuries:
        for r in inst.demand_nodes:
            for t in periods:
                _register(lp, vix, ("dew", h.id, r, t))

    for o, p, v in arc_list:
        for t in periods:
            _register(lp, vix, ("Z", o, p, v, t), upper=float(inst.fleet_size(v)), kind=INTEGER)
    for a in inst.commodities:
        for r in inst.supply_nodes:
            for o, p, v in arc_list:
                if not vehicles[v].carries_commodity(a.id):
                    continue
                for t in periods:
                    if inst.arrives_in_horizon(o, p, v, t):
                        _register(lp, vix, ("U", a.id, r, o, p, v, t))
    for h in inst.injuries:
        for r in inst.demand_nodes:
            for o, p, v in arc_list:
                if not vehicles[v].carries_injury(h.id):
                    continue
                for t in periods:
                    if inst.arrives_in_horizon(o, p, v, t):
                        _register(lp, vix, ("W", h.id, r, o, p, v, t))
    for p in inst.node_ids():
        for v in inst.vehicles:
            for t in periods:
                _register(lp, vix, ("sur", p, v.id, t))
    for p in inst.candidate_nodes:
        _register(lp, vix, ("u", p), upper=1.0, kind=BINARY)
    for h in inst.injuries:
        for o in inst.hospital_nodes:
            for p in inst.candidate_nodes:
                for v in inst.vehicles:
                    for t in periods:
                        _register(lp, vix, ("delta", h.id, o, p, v.id, t), upper=1.0)

    for kind, entities in (("commodity", inst.commodities), ("injury", inst.injuries)):
        for entity in entities:
            for node in inst.demand_nodes:
                for t in periods:
                    uncertain = inst.uncertain_periods(kind, entity.id, node, t)  # type: ignore[arg-type]
                    if not uncertain:
                        continue
                    _register(lp, vix, (f"eta_{kind}", entity.id, node, t))
                    for s in uncertain:
                        _register(lp, vix, (f"theta_{kind}", entity.id, node, t, s))
    return vix


def build_structure(
    inst: Instance,
    *,
    strict_eq5: bool = False,
    max_nonzeros: Optional[int] = None,
) -> Tuple[LinearProgram, VariableIndex]:
    """Columns and constraint rows without an objective."""

    cap = max_nonzeros if max_nonzeros is not None else load_settings().max_nonzeros
    lp = LinearProgram(name="relief_model", max_nonzeros=cap)
    vix = build_columns(inst, lp)
    for emitted in (
        emit_injury_constraints(inst, vix, strict_eq5=strict_eq5),
        emit_commodity_constraints(inst, vix),
        emit_vehicle_constraints(inst, vix),
        emit_robust_dual_constraints(inst, vix),
    ):
        logger.debug("Emitted rows per family: %s", family_counts(emitted))
        lp.add_rows(emitted)
    lp.mark_structural(*STRUCTURAL_FAMILIES)
    logger.debug(
        "Assembled model with %d columns, %d rows, %d nonzeros", lp.num_columns, lp.num_rows, lp.nonzeros
    )
    return lp, vix


def assemble(
    inst: Instance,
    which_objective: int,
    *,
    strict_eq5: bool = False,
    max_nonzeros: Optional[int] = None,
) -> Tuple[LinearProgram, VariableIndex]:
    """Full single-objective model for ``which_objective`` in 1..4."""

    lp, vix = build_structure(inst, strict_eq5=strict_eq5, max_nonzeros=max_nonzeros)
    objective = build_objective(inst, vix, which_objective)
    lp.set_objective(objective.coefficients, objective.offset)
    lp.name = f"relief_model_obj{which_objective}"
    return lp, vix


__all__ = ["build_columns", "build_structure", "assemble"]
