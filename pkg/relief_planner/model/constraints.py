"""Constraint families of the robust relief-logistics model.

Each ``emit_*`` function returns :class:`Row` objects tagged with the equation
family and index tuple that produced them. Flow terms are cumulative: a row for
period ``t`` sums departures at periods ``s <= t`` and arrivals of shipments that
departed at ``s <= t - travel``. Shifted indices below 1 are dropped.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Any, DefaultDict, Dict, List, Optional, Sequence, Tuple

from ..instance import Instance, arcs_by_node
from .program import EQ, GE, LE, Row, VariableIndex

Coefficients = DefaultDict[int, float]

STRUCTURAL_FAMILIES = (15, 16, 21)


def _row(coefficients: Dict[int, float], sense: str, rhs: float, family: int, index: Tuple[Any, ...]) -> Optional[Row]:
    terms = tuple(sorted((col, float(coef)) for col, coef in coefficients.items() if coef != 0.0))
    if not terms:
        if (sense == LE and rhs >= 0.0) or (sense == GE and rhs <= 0.0) or (sense == EQ and rhs == 0.0):
            return None
    return Row(coefficients=terms, sense=sense, rhs=float(rhs), family=family, index=index)


class _FlowTerms:
    """Accumulates time-shifted flow columns for one variable family."""

    def __init__(self, inst: Instance, vix: VariableIndex) -> None:
        self.inst = inst
        self.vix = vix
        self.outgoing, self.incoming = arcs_by_node(inst)

    def arrivals(
        self, into: Coefficients, family: str, prefix: Tuple[str, ...], node: str, t: int, coef: float,
        vehicle: Optional[str] = None,
    ) -> None:
        for o, p, v in self.incoming[node]:
            if vehicle is not None and v != vehicle:
                continue
            for s in range(1, t - self.inst.travel(o, p, v) + 1):
                col = self.vix.get((family, *prefix, o, p, v, s))
                if col is not None:
                    into[col] += coef

    def departures(
        self, into: Coefficients, family: str, prefix: Tuple[str, ...], node: str, t: int, coef: float,
        vehicle: Optional[str] = None,
    ) -> None:
        for o, p, v in self.outgoing[node]:
            if vehicle is not None and v != vehicle:
                continue
            for s in range(1, t + 1):
                col = self.vix.get((family, *prefix, o, p, v, s))
                if col is not None:
                    into[col] += coef

    def dispatched_toward(self, into: Coefficients, family: str, prefix: Tuple[str, ...], node: str, t: int, coef: float) -> None:
        for o, p, v in self.incoming[node]:
            for s in range(1, t + 1):
                col = self.vix.get((family, *prefix, o, p, v, s))
                if col is not None:
                    into[col] += coef


def _protection(
    into: Coefficients, inst: Instance, vix: VariableIndex, kind: str, entity: str, node: str, t: int, sign: float
) -> None:
    eta = vix.get((f"eta_{kind}", entity, node, t))
    if eta is None:
        return
    into[eta] += sign * inst.budget(kind, entity, node, t)  # type: ignore[arg-type]
    for s in inst.uncertain_periods(kind, entity, node, t):  # type: ignore[arg-type]
        into[vix.column((f"theta_{kind}", entity, node, t, s))] += sign


def _cumulative(into: Coefficients, vix: VariableIndex, family: str, prefix: Tuple[str, ...], t: int, coef: float) -> None:
    for s in range(1, t + 1):
        col = vix.get((family, *prefix, s))
        if col is not None:
            into[col] += coef


def emit_injury_constraints(inst: Instance, vix: VariableIndex, *, strict_eq5: bool = False) -> List[Row]:
    """Unserved-injury balance, hospital capacities, capacity donation and injury flow."""

    flows = _FlowTerms(inst, vix)
    rows: List[Optional[Row]] = []
    injuries = [h.id for h in inst.injuries]
    demand_nodes = inst.demand_nodes
    hospitals = inst.hospital_nodes
    candidates = inst.candidate_nodes
    receiving = [n for n in inst.node_ids() if n in set(hospitals) | set(candidates)]
    vehicles = [v.id for v in inst.vehicles]
    periods = list(inst.period_range)

    for h in injuries:
        for r in demand_nodes:
            for t in periods:
                coefs: Coefficients = defaultdict(float)
                demand = sum(inst.demand("injury", h, r, s) for s in range(1, t + 1))
                if strict_eq5:
                    for p in receiving:
                        flows.arrivals(coefs, "W", (h, r), p, t, -1.0)
                        flows.dispatched_toward(coefs, "W", (h, r), p, t, 1.0)
                    _cumulative(coefs, vix, "dev_injury", (h, r), t, -1.0)
                    _protection(coefs, inst, vix, "injury", h, r, t, 1.0)
                    rows.append(_row(coefs, LE, -demand, 5, (h, r, t)))
                else:
                    flows.departures(coefs, "W", (h, r), r, t, 1.0)
                    flows.arrivals(coefs, "W", (h, r), r, t, -1.0)
                    _cumulative(coefs, vix, "dev_injury", (h, r), t, 1.0)
                    _protection(coefs, inst, vix, "injury", h, r, t, -1.0)
                    rows.append(_row(coefs, GE, demand, 5, (h, r, t)))

    def donated(into: Coefficients, h: str, o: str, p: str, v: str, t: int, coef: float) -> None:
        shift = inst.travel(o, p, v)
        for s in range(1, t + 1):
            if s - shift < 1:
                continue
            col = vix.get(("delta", h, o, p, v, s - shift))
            if col is not None:
                into[col] += coef * inst.capacity(h, o, s)

    for h in injuries:
        for o in hospitals:
            for t in periods:
                coefs = defaultdict(float)
                for r in demand_nodes:
                    flows.arrivals(coefs, "W", (h, r), o, t, 1.0)
                    flows.departures(coefs, "W", (h, r), o, t, -1.0)
                for v in vehicles:
                    for p in candidates:
                        donated(coefs, h, o, p, v, t, 1.0)
                capacity = sum(inst.capacity(h, o, s) for s in range(1, t + 1))
                rows.append(_row(coefs, LE, capacity, 6, (h, o, t)))

    for h in injuries:
        for p in candidates:
            for t in periods:
                coefs = defaultdict(float)
                for r in demand_nodes:
                    flows.arrivals(coefs, "W", (h, r), p, t, 1.0)
                    flows.departures(coefs, "W", (h, r), p, t, -1.0)
                for v in vehicles:
                    for o in hospitals:
                        donated(coefs, h, o, p, v, t, -1.0)
                rows.append(_row(coefs, LE, 0.0, 7, (h, p, t)))

    for h in injuries:
        for o in hospitals:
            for t in periods:
                for v in vehicles:
                    coefs = defaultdict(float)
                    for s in range(1, t + 1):
                        for p in candidates:
                            coefs[vix.column(("delta", h, o, p, v, s))] += 1.0
                    rows.append(_row(coefs, LE, 1.0, 8, (h, o, t, v)))

    for h in injuries:
        for o in hospitals:
            for p in candidates:
                for t in periods:
                    for v in vehicles:
                        coefs = defaultdict(float)
                        coefs[vix.column(("delta", h, o, p, v, t))] += 1.0
                        coefs[vix.column(("u", p))] -= 1.0
                        rows.append(_row(coefs, LE, 0.0, 9, (h, o, p, t, v)))

    for h in injuries:
        for r in demand_nodes:
            for t in periods:
                coefs = defaultdict(float)
                for p in receiving:
                    flows.arrivals(coefs, "W", (h, r), p, t, 1.0)
                    flows.departures(coefs, "W", (h, r), p, t, -1.0)
                _cumulative(coefs, vix, "dew", (h, r), t, -1.0)
                rows.append(_row(coefs, EQ, 0.0, 10, (h, r, t)))

    transit = [n for n in inst.node_ids() if n not in set(receiving)]
    for h in injuries:
        for r in demand_nodes:
            for p in transit:
                if p == r:
                    continue
                for t in periods:
                    coefs = defaultdict(float)
                    flows.arrivals(coefs, "W", (h, r), p, t, 1.0)
                    flows.departures(coefs, "W", (h, r), p, t, -1.0)
                    rows.append(_row(coefs, EQ, 0.0, 11, (h, r, p, t)))

    return [row for row in rows if row is not None]


def emit_commodity_constraints(inst: Instance, vix: VariableIndex) -> List[Row]:
    """Unmet-demand balance, depot supply limits and commodity flow conservation."""

    flows = _FlowTerms(inst, vix)
    rows: List[Optional[Row]] = []
    commodities = [a.id for a in inst.commodities]
    demand_nodes = inst.demand_nodes
    supply_nodes = inst.supply_nodes
    periods = list(inst.period_range)

    for a in commodities:
        for p in demand_nodes:
            for t in periods:
                coefs: Coefficients = defaultdict(float)
                for r in supply_nodes:
                    flows.arrivals(coefs, "U", (a, r), p, t, 1.0)
                    flows.departures(coefs, "U", (a, r), p, t, -1.0)
                _cumulative(coefs, vix, "dev_commodity", (a, p), t, 1.0)
                _protection(coefs, inst, vix, "commodity", a, p, t, -1.0)
                demand = sum(inst.demand("commodity", a, p, s) for s in range(1, t + 1))
                rows.append(_row(coefs, GE, demand, 12, (a, p, t)))

    for a in commodities:
        for r in supply_nodes:
            for t in periods:
                coefs = defaultdict(float)
                flows.departures(coefs, "U", (a, r), r, t, 1.0)
                flows.arrivals(coefs, "U", (a, r), r, t, -1.0)
                supply = sum(inst.supply(a, r, s) for s in range(1, t + 1))
                rows.append(_row(coefs, LE, supply, 13, (a, r, t)))

    transit = [n for n in inst.node_ids() if n not in set(demand_nodes)]
    for a in commodities:
        for r in supply_nodes:
            for p in transit:
                if p == r:
                    continue
                for t in periods:
                    coefs = defaultdict(float)
                    flows.arrivals(coefs, "U", (a, r), p, t, 1.0)
                    flows.departures(coefs, "U", (a, r), p, t, -1.0)
                    rows.append(_row(coefs, EQ, 0.0, 14, (a, r, p, t)))

    return [row for row in rows if row is not None]


def emit_vehicle_constraints(inst: Instance, vix: VariableIndex) -> List[Row]:
    """Vehicle capacity per arc-period, capacity-transfer support and fleet balance.

    Compatibility and arc existence are enforced by which columns exist at all.
    """

    flows = _FlowTerms(inst, vix)
    rows: List[Optional[Row]] = []
    periods = list(inst.period_range)
    volume = {a.id: a.volume for a in inst.commodities}
    weight = {a.id: a.weight for a in inst.commodities}
    shipments: DefaultDict[Tuple[str, str, str, int], List[Tuple[str, int]]] = defaultdict(list)
    evacuations: DefaultDict[Tuple[str, str, str, int], List[int]] = defaultdict(list)
    for (_, a, _r, o, p, v, t), col in vix.family("U"):
        shipments[(o, p, v, t)].append((a, col))
    for (_, _h, _r, o, p, v, t), col in vix.family("W"):
        evacuations[(o, p, v, t)].append(col)

    for (_, o, p, v, t), z in vix.family("Z"):
        vehicle = inst.vehicle(v)
        carried = shipments.get((o, p, v, t))
        if carried:
            by_volume: Coefficients = defaultdict(float)
            by_weight: Coefficients = defaultdict(float)
            for a, col in carried:
                by_volume[col] += volume[a]
                by_weight[col] += weight[a]
            by_volume[z] -= vehicle.volume_capacity
            by_weight[z] -= vehicle.load_capacity
            rows.append(_row(by_volume, LE, 0.0, 17, (o, p, v, t)))
            rows.append(_row(by_weight, LE, 0.0, 18, (o, p, v, t)))
        moved = evacuations.get((o, p, v, t))
        if moved:
            coefs: Coefficients = defaultdict(float)
            for col in moved:
                coefs[col] += 1.0
            coefs[z] -= vehicle.injury_capacity
            rows.append(_row(coefs, LE, 0.0, 19, (o, p, v, t)))

    for o in inst.hospital_nodes:
        for p in inst.candidate_nodes:
            for v in inst.vehicles:
                for t in periods:
                    coefs = defaultdict(float)
                    for h in inst.injuries:
                        coefs[vix.column(("delta", h.id, o, p, v.id, t))] += inst.capacity(h.id, o, t)
                    z = vix.get(("Z", o, p, v.id, t))
                    if z is not None:
                        coefs[z] -= v.resource_transfer_capacity
                    rows.append(_row(coefs, LE, 0.0, 20, (o, p, v.id, t)))

    for p in inst.node_ids():
        for v in inst.vehicles:
            for t in periods:
                coefs = defaultdict(float)
                flows.arrivals(coefs, "Z", (), p, t, 1.0, vehicle=v.id)
                flows.departures(coefs, "Z", (), p, t, -1.0, vehicle=v.id)
                coefs[vix.column(("sur", p, v.id, t))] -= 1.0
                available = sum(inst.availability(v.id, p, s) for s in range(1, t + 1))
                rows.append(_row(coefs, EQ, -float(available), 22, (p, v.id, t)))

    return [row for row in rows if row is not None]


def emit_robust_dual_constraints(inst: Instance, vix: VariableIndex) -> List[Row]:
    """Dual-feasibility rows ``eta + theta_s >= deviation_s`` of the budgeted protection."""

    rows: List[Optional[Row]] = []
    for family, kind, entities in (
        (23, "commodity", [a.id for a in inst.commodities]),
        (24, "injury", [h.id for h in inst.injuries]),
    ):
        for entity in entities:
            for node in inst.demand_nodes:
                for t in inst.period_range:
                    eta = vix.get((f"eta_{kind}", entity, node, t))
                    if eta is None:
                        continue
                    for s in inst.uncertain_periods(kind, entity, node, t):  # type: ignore[arg-type]
                        theta = vix.column((f"theta_{kind}", entity, node, t, s))
                        deviation = inst.deviation(kind, entity, node, s)  # type: ignore[arg-type]
                        rows.append(_row({eta: 1.0, theta: 1.0}, GE, deviation, family, (entity, node, t, s)))
    return [row for row in rows if row is not None]


def family_counts(rows: Sequence[Row]) -> Dict[int, int]:
    counts: Dict[int, int] = {}
    for row in rows:
        counts[row.family] = counts.get(row.family, 0) + 1
    return dict(sorted(counts.items()))


__all__ = [
    "STRUCTURAL_FAMILIES",
    "emit_injury_constraints",
    "emit_commodity_constraints",
    "emit_vehicle_constraints",
    "emit_robust_dual_constraints",
    "family_counts",
]
