"""Invariant checks on an :class:`Instance`; violations are data, not errors."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from .schema import CANDIDATE, DEMAND, HOSPITAL, ROLES, SUPPLY, Instance

BUDGET_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    where: Tuple[Any, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "where": list(self.where)}


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> List[str]:
        return [violation.code for violation in self.violations]

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


def validate(inst: Instance) -> ValidationReport:
    """List every invariant violation of ``inst``; an empty report means model-ready."""

    found: List[Violation] = []

    def flag(code: str, message: str, *where: Any) -> None:
        found.append(Violation(code, message, tuple(where)))

    if inst.periods < 1:
        flag("invalid_periods", f"periods must be >= 1, got {inst.periods}")
    if not inst.nodes:
        flag("empty_node_set", "empty node set")

    for what, ids in (
        ("node", [n.id for n in inst.nodes]),
        ("commodity", [a.id for a in inst.commodities]),
        ("injury", [h.id for h in inst.injuries]),
        ("vehicle", [v.id for v in inst.vehicles]),
    ):
        if len(set(ids)) != len(ids):
            flag("duplicate_id", f"duplicate {what} ids", what)

    nodes = {n.id for n in inst.nodes}
    commodities = {a.id for a in inst.commodities}
    injuries = {h.id for h in inst.injuries}
    vehicles = {v.id for v in inst.vehicles}
    periods = set(inst.period_range)

    for a in inst.commodities:
        for attr in ("weight", "volume", "priority"):
            if getattr(a, attr) <= 0:
                flag("nonpositive_attribute", f"commodity {a.id} {attr} must be > 0", a.id, attr)
    for h in inst.injuries:
        if h.priority <= 0:
            flag("nonpositive_attribute", f"injury {h.id} priority must be > 0", h.id, "priority")
    for v in inst.vehicles:
        for attr in ("load_capacity", "volume_capacity"):
            if getattr(v, attr) <= 0:
                flag("nonpositive_attribute", f"vehicle {v.id} {attr} must be > 0", v.id, attr)
        for attr in ("injury_capacity", "resource_transfer_capacity", "operating_cost"):
            if getattr(v, attr) < 0:
                flag("negative_quantity", f"vehicle {v.id} {attr} is negative", v.id, attr)
        if not v.commodity_compat and not v.injury_compat:
            flag("vehicle_without_compatibility", f"vehicle {v.id} carries nothing", v.id)
        for ref in v.commodity_compat - commodities:
            flag("unknown_reference", f"vehicle {v.id} references unknown commodity {ref}", v.id, ref)
        for ref in v.injury_compat - injuries:
            flag("unknown_reference", f"vehicle {v.id} references unknown injury {ref}", v.id, ref)

    for node in inst.nodes:
        unknown_roles = node.roles - set(ROLES)
        if unknown_roles:
            flag("unknown_role", f"node {node.id} has unknown roles {sorted(unknown_roles)}", node.id)
        role_tables = (
            ("commodity_demand", node.commodity_demand, DEMAND, commodities),
            ("commodity_deviation", node.commodity_deviation, DEMAND, commodities),
            ("injury_demand", node.injury_demand, DEMAND, injuries),
            ("injury_deviation", node.injury_deviation, DEMAND, injuries),
            ("commodity_supply", node.commodity_supply, SUPPLY, commodities),
            ("hospital_capacity", node.hospital_capacity, HOSPITAL, injuries),
            ("vehicle_availability", node.vehicle_availability, None, vehicles),
        )
        for name, table, role, known in role_tables:
            if table and role is not None and role not in node.roles:
                flag("field_role_mismatch", f"node {node.id} declares {name} without role {role}", node.id, name)
            for (entity, period), amount in table.items():
                if entity not in known:
                    flag("unknown_reference", f"node {node.id} {name} references {entity}", node.id, name, entity)
                if period not in periods:
                    flag("period_out_of_range", f"node {node.id} {name} period {period}", node.id, name, period)
                if amount < 0:
                    flag("negative_quantity", f"node {node.id} {name} is negative", node.id, name, entity, period)
        for (vehicle, period), count in node.vehicle_availability.items():
            if count != int(count):
                flag("non_integer_availability", f"node {node.id} vehicle {vehicle} count", node.id, vehicle)
        if node.construction_cost is not None:
            if CANDIDATE not in node.roles:
                flag("field_role_mismatch", f"node {node.id} has a construction cost without role {CANDIDATE}", node.id)
            if node.construction_cost < 0:
                flag("negative_quantity", f"node {node.id} construction cost is negative", node.id)

    for (o, p, v), periods_needed in inst.travel_time.items():
        if o not in nodes or p not in nodes or v not in vehicles:
            flag("unknown_reference", f"travel time {o}->{p} ({v}) references unknown ids", o, p, v)
        if periods_needed < 0:
            flag("negative_quantity", f"travel time {o}->{p} ({v}) is negative", o, p, v)
        if o == p and periods_needed != 0:
            flag("self_loop_travel_time", f"self-loop travel time at {o} for {v}", o, v)
        if periods_needed != int(periods_needed):
            flag("invalid_travel_time", f"travel time {o}->{p} ({v}) is not integral", o, p, v)

    demand_nodes = set(inst.demand_nodes)
    for kind, table, known in (
        ("injury", inst.robust_budget_injury, injuries),
        ("commodity", inst.robust_budget_commodity, commodities),
    ):
        for (entity, node_id, period), gamma in table.items():
            if entity not in known or node_id not in nodes or period not in periods:
                flag("unknown_reference", f"{kind} budget references unknown ids", entity, node_id, period)
                continue
            if node_id not in demand_nodes:
                flag("field_role_mismatch", f"{kind} budget on non-demand node {node_id}", entity, node_id, period)
                continue
            if gamma < 0:
                flag("negative_quantity", f"{kind} budget is negative", entity, node_id, period)
            uncertain = len(inst.uncertain_periods(kind, entity, node_id, period))
            if gamma > uncertain + BUDGET_TOLERANCE:
                flag(
                    "budget_exceeds_uncertainty_set",
                    f"budget exceeds uncertainty set: {kind} {entity} at {node_id}, period {period}: "
                    f"gamma {gamma} > {uncertain}",
                    entity,
                    node_id,
                    period,
                )

    if inst.big_m is not None and inst.big_m <= 0:
        flag("negative_quantity", "big_m must be positive")

    return ValidationReport(violations=found)


__all__ = ["Violation", "ValidationReport", "validate"]
