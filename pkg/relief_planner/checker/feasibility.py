"""Independent re-evaluation of every model equation on a named Solution.

Nothing here imports the model assembly: rows are recomputed straight from the
instance data so that assembly mistakes show up as violations.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from ..errors import DimensionError
from ..instance import Instance, arcs, arcs_by_node
from .solution import FAMILIES, Solution

logger = logging.getLogger(__name__)

RELATIVE_TOLERANCE = 1e-6
INTEGRALITY_TOLERANCE = 1e-6

_DIMENSIONS: Dict[str, Tuple[str, ...]] = {
    "dev_injury": ("injury", "node", "period"),
    "dev_commodity": ("commodity", "node", "period"),
    "dew": ("injury", "node", "period"),
    "Z": ("node", "node", "vehicle", "period"),
    "U": ("commodity", "node", "node", "node", "vehicle", "period"),
    "W": ("injury", "node", "node", "node", "vehicle", "period"),
    "sur": ("node", "vehicle", "period"),
    "u": ("node",),
    "delta": ("injury", "node", "node", "vehicle", "period"),
    "eta_commodity": ("commodity", "node", "period"),
    "theta_commodity": ("commodity", "node", "period", "period"),
    "eta_injury": ("injury", "node", "period"),
    "theta_injury": ("injury", "node", "period", "period"),
}


@dataclass(frozen=True)
class RowViolation:
    family: str
    index: Tuple[Any, ...]
    sense: str
    activity: float
    rhs: float
    slack: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "family": self.family,
            "index": list(self.index),
            "sense": self.sense,
            "activity": self.activity,
            "rhs": self.rhs,
            "slack": self.slack,
        }


@dataclass
class CheckReport:
    violations: List[RowViolation] = field(default_factory=list)
    objectives: Dict[int, float] = field(default_factory=dict)
    claimed_objectives: Dict[int, float] = field(default_factory=dict)
    rows_checked: int = 0

    @property
    def objective_mismatches(self) -> Dict[int, Tuple[float, float]]:
        found: Dict[int, Tuple[float, float]] = {}
        for which, claimed in self.claimed_objectives.items():
            actual = self.objectives.get(which)
            if actual is None:
                continue
            if abs(actual - claimed) > RELATIVE_TOLERANCE * (1.0 + abs(actual)):
                found[which] = (claimed, actual)
        return found

    @property
    def passed(self) -> bool:
        return not self.violations and not self.objective_mismatches

    def families(self) -> List[str]:
        return [violation.family for violation in self.violations]

    def to_frame(self) -> pd.DataFrame:
        columns = ["family", "index", "sense", "activity", "rhs", "slack"]
        return pd.DataFrame([v.to_dict() for v in self.violations], columns=columns)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "rows_checked": self.rows_checked,
            "violations": [v.to_dict() for v in self.violations],
            "objectives": {str(k): v for k, v in sorted(self.objectives.items())},
            "claimed_objectives": {str(k): v for k, v in sorted(self.claimed_objectives.items())},
            "objective_mismatches": {
                str(k): {"claimed": c, "recomputed": a} for k, (c, a) in sorted(self.objective_mismatches.items())
            },
        }


def check_dimensions(inst: Instance, sol: Solution) -> None:
    """Raise :class:`DimensionError` when ``sol`` names anything ``inst`` does not declare."""

    known = {
        "injury": {h.id for h in inst.injuries},
        "commodity": {a.id for a in inst.commodities},
        "node": set(inst.node_ids()),
        "vehicle": {v.id for v in inst.vehicles},
    }
    for family, entries in sol.values.items():
        if family not in FAMILIES:
            raise DimensionError(f"unknown variable family {family!r}")
        dimensions = _DIMENSIONS[family]
        for index in entries:
            if len(index) != len(dimensions):
                raise DimensionError(f"{family}{list(index)} has {len(index)} indices, expected {len(dimensions)}")
            for kind, part in zip(dimensions, index):
                if kind == "period":
                    if not isinstance(part, int) or not 1 <= part <= inst.periods:
                        raise DimensionError(f"{family}{list(index)}: period {part!r} outside 1..{inst.periods}")
                elif part not in known[kind]:
                    raise DimensionError(f"{family}{list(index)}: unknown {kind} {part!r}")


class _Evaluator:
    def __init__(self, inst: Instance, sol: Solution) -> None:
        self.inst = inst
        self.sol = sol
        self.outgoing, self.incoming = arcs_by_node(inst)
        self.report = CheckReport()

    # -- flow sums -------------------------------------------------------------------
    def arrived(self, family: str, prefix: Tuple[str, ...], node: str, t: int, vehicle: Optional[str] = None) -> float:
        total = 0.0
        for o, p, v in self.incoming[node]:
            if vehicle is not None and v != vehicle:
                continue
            for s in range(1, t - self.inst.travel(o, p, v) + 1):
                total += self.sol.get(family, *prefix, o, p, v, s)
        return total

    def departed(self, family: str, prefix: Tuple[str, ...], node: str, t: int, vehicle: Optional[str] = None) -> float:
        total = 0.0
        for o, p, v in self.outgoing[node]:
            if vehicle is not None and v != vehicle:
                continue
            for s in range(1, t + 1):
                total += self.sol.get(family, *prefix, o, p, v, s)
        return total

    def dispatched_toward(self, family: str, prefix: Tuple[str, ...], node: str, t: int) -> float:
        return sum(
            self.sol.get(family, *prefix, o, p, v, s)
            for o, p, v in self.incoming[node]
            for s in range(1, t + 1)
        )

    def cumulative(self, family: str, prefix: Tuple[str, ...], t: int) -> float:
        return sum(self.sol.get(family, *prefix, s) for s in range(1, t + 1))

    def protection(self, kind: str, entity: str, node: str, t: int) -> float:
        uncertain = self.inst.uncertain_periods(kind, entity, node, t)  # type: ignore[arg-type]
        if not uncertain:
            return 0.0
        eta = self.sol.get(f"eta_{kind}", entity, node, t)
        theta = sum(self.sol.get(f"theta_{kind}", entity, node, t, s) for s in uncertain)
        return self.inst.budget(kind, entity, node, t) * eta + theta  # type: ignore[arg-type]

    # -- recording -------------------------------------------------------------------
    def row(self, family: str, index: Tuple[Any, ...], activity: float, sense: str, rhs: float) -> None:
        self.report.rows_checked += 1
        if sense == "<=":
            slack = rhs - activity
        elif sense == ">=":
            slack = activity - rhs
        else:
            slack = -abs(activity - rhs)
        if slack < -RELATIVE_TOLERANCE * (1.0 + abs(rhs)):
            self.report.violations.append(RowViolation(family, tuple(index), sense, activity, rhs, slack))


def _check_domains(ev: _Evaluator) -> None:
    inst, sol = ev.inst, ev.sol
    arc_set = set(arcs(inst))
    vehicles = {v.id: v for v in inst.vehicles}
    for family, entries in sol.values.items():
        for index, value in entries.items():
            if value < 0:
                ev.row("bounds", (family, *index), value, ">=", 0.0)
    for index, value in sol.values.get("delta", {}).items():
        ev.row("bounds", ("delta", *index), value, "<=", 1.0)
    for index, value in sol.values.get("u", {}).items():
        if min(abs(value), abs(value - 1.0)) > INTEGRALITY_TOLERANCE:
            ev.row("integrality", ("u", *index), value, "=", float(round(value)))
    for index, value in sol.values.get("Z", {}).items():
        o, p, v, _t = index
        if abs(value - round(value)) > INTEGRALITY_TOLERANCE:
            ev.row("integrality", ("Z", *index), value, "=", float(round(value)))
        if (o, p, v) not in arc_set:
            ev.row("eq21", index, value, "<=", 0.0)
        ev.row("bounds", ("Z", *index), value, "<=", float(inst.fleet_size(v)))
    for index, value in sol.values.get("U", {}).items():
        a, _r, o, p, v, t = index
        if not vehicles[v].carries_commodity(a):
            ev.row("eq15", index, value, "<=", 0.0)
        if (o, p, v) not in arc_set:
            ev.row("eq21", index, value, "<=", 0.0)
        elif not inst.arrives_in_horizon(o, p, v, t):
            ev.row("horizon", ("U", *index), value, "<=", 0.0)
    for index, value in sol.values.get("W", {}).items():
        h, _r, o, p, v, t = index
        if not vehicles[v].carries_injury(h):
            ev.row("eq16", index, value, "<=", 0.0)
        if (o, p, v) not in arc_set:
            ev.row("eq21", index, value, "<=", 0.0)
        elif not inst.arrives_in_horizon(o, p, v, t):
            ev.row("horizon", ("W", *index), value, "<=", 0.0)


def _check_injuries(ev: _Evaluator, strict_eq5: bool) -> None:
    inst, sol = ev.inst, ev.sol
    hospitals = inst.hospital_nodes
    candidates = inst.candidate_nodes
    receiving = [n for n in inst.node_ids() if n in hospitals or n in candidates]
    periods = list(inst.period_range)

    for h in inst.injuries:
        for r in inst.demand_nodes:
            for t in periods:
                demand = sum(inst.demand("injury", h.id, r, s) for s in range(1, t + 1))
                unserved = ev.cumulative("dev_injury", (h.id, r), t)
                guard = ev.protection("injury", h.id, r, t)
                if strict_eq5:
                    in_transit = sum(
                        ev.dispatched_toward("W", (h.id, r), p, t) - ev.arrived("W", (h.id, r), p, t) for p in receiving
                    )
                    ev.row("eq5", (h.id, r, t), in_transit - unserved + guard, "<=", -demand)
                else:
                    moved_out = ev.departed("W", (h.id, r), r, t) - ev.arrived("W", (h.id, r), r, t)
                    ev.row("eq5", (h.id, r, t), moved_out + unserved - guard, ">=", demand)

    def donated(h: str, o: str, p: str, v: str, t: int) -> float:
        shift = inst.travel(o, p, v)
        return sum(
            inst.capacity(h, o, s) * sol.get("delta", h, o, p, v, s - shift)
            for s in range(1, t + 1)
            if s - shift >= 1
        )

    def admitted(h: str, node: str, t: int) -> float:
        return sum(
            ev.arrived("W", (h, r), node, t) - ev.departed("W", (h, r), node, t) for r in inst.demand_nodes
        )

    for h in inst.injuries:
        for o in hospitals:
            for t in periods:
                given = sum(donated(h.id, o, p, v.id, t) for v in inst.vehicles for p in candidates)
                capacity = sum(inst.capacity(h.id, o, s) for s in range(1, t + 1))
                ev.row("eq6", (h.id, o, t), admitted(h.id, o, t) + given, "<=", capacity)
        for p in candidates:
            for t in periods:
                received = sum(donated(h.id, o, p, v.id, t) for v in inst.vehicles for o in hospitals)
                ev.row("eq7", (h.id, p, t), admitted(h.id, p, t) - received, "<=", 0.0)
        for o in hospitals:
            for t in periods:
                for v in inst.vehicles:
                    share = sum(sol.get("delta", h.id, o, p, v.id, s) for s in range(1, t + 1) for p in candidates)
                    ev.row("eq8", (h.id, o, t, v.id), share, "<=", 1.0)
        for o in hospitals:
            for p in candidates:
                for t in periods:
                    for v in inst.vehicles:
                        ev.row("eq9", (h.id, o, p, t, v.id), sol.get("delta", h.id, o, p, v.id, t) - sol.get("u", p), "<=", 0.0)
        for r in inst.demand_nodes:
            for t in periods:
                delivered = sum(
                    ev.arrived("W", (h.id, r), p, t) - ev.departed("W", (h.id, r), p, t) for p in receiving
                )
                ev.row("eq10", (h.id, r, t), delivered - ev.cumulative("dew", (h.id, r), t), "=", 0.0)
        for r in inst.demand_nodes:
            for p in inst.node_ids():
                if p == r or p in receiving:
                    continue
                for t in periods:
                    net = ev.arrived("W", (h.id, r), p, t) - ev.departed("W", (h.id, r), p, t)
                    ev.row("eq11", (h.id, r, p, t), net, "=", 0.0)


def _check_commodities(ev: _Evaluator) -> None:
    inst = ev.inst
    periods = list(inst.period_range)
    for a in inst.commodities:
        for p in inst.demand_nodes:
            for t in periods:
                received = sum(
                    ev.arrived("U", (a.id, r), p, t) - ev.departed("U", (a.id, r), p, t) for r in inst.supply_nodes
                )
                demand = sum(inst.demand("commodity", a.id, p, s) for s in range(1, t + 1))
                unmet = ev.cumulative("dev_commodity", (a.id, p), t)
                guard = ev.protection("commodity", a.id, p, t)
                ev.row("eq12", (a.id, p, t), received + unmet - guard, ">=", demand)
        for r in inst.supply_nodes:
            for t in periods:
                shipped = ev.departed("U", (a.id, r), r, t) - ev.arrived("U", (a.id, r), r, t)
                supply = sum(inst.supply(a.id, r, s) for s in range(1, t + 1))
                ev.row("eq13", (a.id, r, t), shipped, "<=", supply)
        for r in inst.supply_nodes:
            for p in inst.node_ids():
                if p == r or p in inst.demand_nodes:
                    continue
                for t in periods:
                    net = ev.arrived("U", (a.id, r), p, t) - ev.departed("U", (a.id, r), p, t)
                    ev.row("eq14", (a.id, r, p, t), net, "=", 0.0)


def _check_vehicles(ev: _Evaluator) -> None:
    inst, sol = ev.inst, ev.sol
    periods = list(inst.period_range)
    for o, p, v in arcs(inst):
        vehicle = inst.vehicle(v)
        for t in periods:
            z = sol.get("Z", o, p, v, t)
            volume = sum(
                a.volume * sol.get("U", a.id, r, o, p, v, t) for a in inst.commodities for r in inst.supply_nodes
            )
            weight = sum(
                a.weight * sol.get("U", a.id, r, o, p, v, t) for a in inst.commodities for r in inst.supply_nodes
            )
            people = sum(sol.get("W", h.id, r, o, p, v, t) for h in inst.injuries for r in inst.demand_nodes)
            ev.row("eq17", (o, p, v, t), volume - vehicle.volume_capacity * z, "<=", 0.0)
            ev.row("eq18", (o, p, v, t), weight - vehicle.load_capacity * z, "<=", 0.0)
            ev.row("eq19", (o, p, v, t), people - vehicle.injury_capacity * z, "<=", 0.0)
    for o in inst.hospital_nodes:
        for p in inst.candidate_nodes:
            for v in inst.vehicles:
                for t in periods:
                    moved = sum(inst.capacity(h.id, o, t) * sol.get("delta", h.id, o, p, v.id, t) for h in inst.injuries)
                    ev.row("eq20", (o, p, v.id, t), moved - v.resource_transfer_capacity * sol.get("Z", o, p, v.id, t), "<=", 0.0)
    for p in inst.node_ids():
        for v in inst.vehicles:
            for t in periods:
                balance = ev.arrived("Z", (), p, t, vehicle=v.id) - ev.departed("Z", (), p, t, vehicle=v.id)
                available = sum(inst.availability(v.id, p, s) for s in range(1, t + 1))
                ev.row("eq22", (p, v.id, t), balance + available - sol.get("sur", p, v.id, t), "=", 0.0)


def _check_robust_duals(ev: _Evaluator) -> None:
    inst, sol = ev.inst, ev.sol
    for family, kind, entities in (
        ("eq23", "commodity", inst.commodities),
        ("eq24", "injury", inst.injuries),
    ):
        for entity in entities:
            for node in inst.demand_nodes:
                for t in inst.period_range:
                    eta = sol.get(f"eta_{kind}", entity.id, node, t)
                    for s in inst.uncertain_periods(kind, entity.id, node, t):  # type: ignore[arg-type]
                        deviation = inst.deviation(kind, entity.id, node, s)  # type: ignore[arg-type]
                        theta = sol.get(f"theta_{kind}", entity.id, node, t, s)
                        ev.row(family, (entity.id, node, t, s), eta + theta, ">=", deviation)


def evaluate_objectives(inst: Instance, sol: Solution) -> Dict[int, float]:
    """Recompute the four objective values from the solution's variables."""

    unserved = sum(
        h.priority * sol.get("dev_injury", h.id, r, t)
        for h in inst.injuries
        for r in inst.demand_nodes
        for t in inst.period_range
    )
    unmet = sum(
        a.priority * sol.get("dev_commodity", a.id, p, t)
        for a in inst.commodities
        for p in inst.demand_nodes
        for t in inst.period_range
    )
    cost = sum(
        value * inst.travel(o, p, v) * inst.vehicle(v).operating_cost
        for (o, p, v, _t), value in sol.values.get("Z", {}).items()
    )
    cost += sum(
        (inst.node(p).construction_cost or 0.0) * sol.get("u", p) for p in inst.candidate_nodes
    )
    installed = sum(
        inst.capacity(h.id, o, t) for h in inst.injuries for t in inst.period_range for o in inst.hospital_nodes
    )
    underused = installed - sol.total("dew")
    return {1: float(unserved), 2: float(unmet), 3: float(cost), 4: float(underused)}


def check(inst: Instance, sol: Solution, *, strict_eq5: bool = False) -> CheckReport:
    """Recompute every equation family on ``sol`` and compare objective values."""

    check_dimensions(inst, sol)
    ev = _Evaluator(inst, sol)
    _check_domains(ev)
    _check_injuries(ev, strict_eq5)
    _check_commodities(ev)
    _check_vehicles(ev)
    _check_robust_duals(ev)
    report = ev.report
    report.objectives = evaluate_objectives(inst, sol)
    report.claimed_objectives = {k: v for k, v in sol.objectives.items() if math.isfinite(v)}
    logger.debug("Checked %d rows: %d violations", report.rows_checked, len(report.violations))
    return report


__all__ = ["RowViolation", "CheckReport", "check", "check_dimensions", "evaluate_objectives"]
