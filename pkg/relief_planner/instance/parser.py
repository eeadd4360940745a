"""JSON instance documents: parsing and serialization."""
from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

from ..errors import InstanceError, InstanceSyntaxError
from .schema import (
    CANDIDATE,
    DEMAND,
    HOSPITAL,
    ROLES,
    SUPPLY,
    CommoditySpec,
    InjurySpec,
    Instance,
    Node,
    VehicleSpec,
)

logger = logging.getLogger(__name__)

_ROLE_FIELDS = {
    "commodity_demand": DEMAND,
    "injury_demand": DEMAND,
    "commodity_supply": SUPPLY,
    "hospital_capacity": HOSPITAL,
    "construction_cost": CANDIDATE,
}


def load_instance(path: Path) -> Instance:
    """Read and parse an instance file."""

    return parse_instance(Path(path).read_text(encoding="utf-8"))


def parse_instance(text: str) -> Instance:
    """Parse an instance document, resolving references and applying defaults."""

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise InstanceError("syntax_error", "instance document must be a JSON object")
    return _InstanceReader(data).read()


def serialize_instance(inst: Instance) -> str:
    """Inverse of :func:`parse_instance`."""

    return json.dumps(instance_to_dict(inst), indent=2, sort_keys=True)


def instance_to_dict(inst: Instance) -> Dict[str, Any]:
    nodes = []
    for node in inst.nodes:
        entry: Dict[str, Any] = {"id": node.id, "roles": [role for role in ROLES if role in node.roles]}
        if node.commodity_demand or node.commodity_deviation:
            entry["commodity_demand"] = _demand_entries(
                "commodity", node.commodity_demand, node.commodity_deviation
            )
        if node.injury_demand or node.injury_deviation:
            entry["injury_demand"] = _demand_entries("injury", node.injury_demand, node.injury_deviation)
        if node.commodity_supply:
            entry["commodity_supply"] = [
                {"commodity": a, "period": t, "amount": amount}
                for (a, t), amount in sorted(node.commodity_supply.items())
            ]
        if node.hospital_capacity:
            entry["hospital_capacity"] = [
                {"injury": h, "period": t, "amount": amount}
                for (h, t), amount in sorted(node.hospital_capacity.items())
            ]
        if node.construction_cost is not None:
            entry["construction_cost"] = node.construction_cost
        if node.vehicle_availability:
            entry["vehicle_availability"] = [
                {"vehicle": v, "period": t, "count": count}
                for (v, t), count in sorted(node.vehicle_availability.items())
            ]
        nodes.append(entry)

    payload: Dict[str, Any] = {
        "periods": inst.periods,
        "commodities": [
            {"id": a.id, "weight": a.weight, "volume": a.volume, "priority": a.priority} for a in inst.commodities
        ],
        "injuries": [{"id": h.id, "priority": h.priority} for h in inst.injuries],
        "vehicles": [
            {
                "id": v.id,
                "load_capacity": v.load_capacity,
                "volume_capacity": v.volume_capacity,
                "injury_capacity": v.injury_capacity,
                "resource_transfer_capacity": v.resource_transfer_capacity,
                "operating_cost": v.operating_cost,
                "commodities": sorted(v.commodity_compat),
                "injuries": sorted(v.injury_compat),
            }
            for v in inst.vehicles
        ],
        "nodes": nodes,
        "travel_time": [
            {"from": o, "to": p, "vehicle": v, "periods": periods}
            for (o, p, v), periods in sorted(inst.travel_time.items())
        ],
        "robust_budgets": {
            "injury": [
                {"injury": h, "node": r, "period": t, "gamma": gamma}
                for (h, r, t), gamma in sorted(inst.robust_budget_injury.items())
            ],
            "commodity": [
                {"commodity": a, "node": p, "period": t, "gamma": gamma}
                for (a, p, t), gamma in sorted(inst.robust_budget_commodity.items())
            ],
        },
        "big_m": "auto" if inst.big_m is None else inst.big_m,
    }
    return payload


def _demand_entries(
    key: str, demand: Dict[Tuple[str, int], float], deviation: Dict[Tuple[str, int], float]
) -> List[Dict[str, Any]]:
    entries = []
    for entity, period in sorted(set(demand) | set(deviation)):
        entries.append(
            {
                key: entity,
                "period": period,
                "amount": demand.get((entity, period), 0.0),
                "deviation": deviation.get((entity, period), 0.0),
            }
        )
    return entries


class _InstanceReader:
    """Single-use reader turning a decoded JSON document into an :class:`Instance`."""

    def __init__(self, data: Dict[str, Any]) -> None:
        self._data = data
        self._periods = 0
        self._commodities: Set[str] = set()
        self._injuries: Set[str] = set()
        self._vehicles: Set[str] = set()
        self._nodes: Set[str] = set()

    def read(self) -> Instance:
        periods = self._data.get("periods")
        if not isinstance(periods, int) or isinstance(periods, bool) or periods < 1:
            raise InstanceError("invalid_periods", f"periods must be an integer >= 1, got {periods!r}")
        self._periods = periods

        commodities = tuple(self._read_commodity(item) for item in self._list("commodities"))
        injuries = tuple(self._read_injury(item) for item in self._list("injuries"))
        self._commodities = self._unique("commodity", (a.id for a in commodities))
        self._injuries = self._unique("injury", (h.id for h in injuries))
        vehicles = tuple(self._read_vehicle(item) for item in self._list("vehicles"))
        self._vehicles = self._unique("vehicle", (v.id for v in vehicles))

        raw_nodes = self._list("nodes")
        if not raw_nodes:
            raise InstanceError("empty_node_set", "empty node set")
        self._nodes = self._unique("node", (str(item.get("id")) for item in raw_nodes if isinstance(item, dict)))
        nodes = tuple(self._read_node(item) for item in raw_nodes)

        travel_time = self._read_travel_times(self._list("travel_time"))
        demand_nodes = [node.id for node in nodes if DEMAND in node.roles]
        injury_budget, commodity_budget = self._read_budgets(demand_nodes)
        big_m = self._read_big_m()

        inst = Instance(
            periods=periods,
            nodes=nodes,
            commodities=commodities,
            injuries=injuries,
            vehicles=vehicles,
            travel_time=travel_time,
            robust_budget_injury={},
            robust_budget_commodity={},
            big_m=big_m,
        )
        # Omitted budgets default to the full uncertainty set.
        for h in injuries:
            for r in demand_nodes:
                for t in inst.period_range:
                    injury_budget.setdefault((h.id, r, t), float(len(inst.uncertain_periods("injury", h.id, r, t))))
        for a in commodities:
            for p in demand_nodes:
                for t in inst.period_range:
                    commodity_budget.setdefault(
                        (a.id, p, t), float(len(inst.uncertain_periods("commodity", a.id, p, t)))
                    )
        logger.debug(
            "Parsed instance with %s nodes, %s periods, %s arcs declared", len(nodes), periods, len(travel_time)
        )
        return Instance(
            periods=periods,
            nodes=nodes,
            commodities=commodities,
            injuries=injuries,
            vehicles=vehicles,
            travel_time=travel_time,
            robust_budget_injury=dict(sorted(injury_budget.items())),
            robust_budget_commodity=dict(sorted(commodity_budget.items())),
            big_m=big_m,
        )

    # -- entity tables -------------------------------------------------------------
    def _read_commodity(self, item: Dict[str, Any]) -> CommoditySpec:
        return CommoditySpec(
            id=self._id(item, "commodity"),
            weight=self._quantity(item, "weight"),
            volume=self._quantity(item, "volume"),
            priority=self._quantity(item, "priority"),
        )

    def _read_injury(self, item: Dict[str, Any]) -> InjurySpec:
        return InjurySpec(id=self._id(item, "injury"), priority=self._quantity(item, "priority"))

    def _read_vehicle(self, item: Dict[str, Any]) -> VehicleSpec:
        commodity_compat = frozenset(str(a) for a in item.get("commodities", []))
        injury_compat = frozenset(str(h) for h in item.get("injuries", []))
        self._check_refs("commodity", commodity_compat, self._commodities)
        self._check_refs("injury", injury_compat, self._injuries)
        return VehicleSpec(
            id=self._id(item, "vehicle"),
            load_capacity=self._quantity(item, "load_capacity"),
            volume_capacity=self._quantity(item, "volume_capacity"),
            injury_capacity=self._quantity(item, "injury_capacity", 0.0),
            resource_transfer_capacity=self._quantity(item, "resource_transfer_capacity", 0.0),
            operating_cost=self._quantity(item, "operating_cost", 0.0),
            commodity_compat=commodity_compat,
            injury_compat=injury_compat,
        )

    def _read_node(self, item: Dict[str, Any]) -> Node:
        node_id = self._id(item, "node")
        roles = frozenset(str(role) for role in item.get("roles", []))
        unknown = roles - set(ROLES)
        if unknown:
            raise InstanceError("unknown_role", f"node {node_id} declares unknown roles {sorted(unknown)}")
        for field_name, role in _ROLE_FIELDS.items():
            present = item.get(field_name)
            if present not in (None, [], {}) and role not in roles:
                raise InstanceError(
                    "field_role_mismatch",
                    f"field/role mismatch: node {node_id} declares {field_name} without the {role} role",
                )

        commodity_demand, commodity_deviation = self._read_demands(
            node_id, item.get("commodity_demand", []), "commodity", self._commodities
        )
        injury_demand, injury_deviation = self._read_demands(
            node_id, item.get("injury_demand", []), "injury", self._injuries
        )
        construction_cost = item.get("construction_cost")
        if construction_cost is not None:
            construction_cost = self._quantity(item, "construction_cost")
        return Node(
            id=node_id,
            roles=roles,
            commodity_demand=commodity_demand,
            commodity_deviation=commodity_deviation,
            injury_demand=injury_demand,
            injury_deviation=injury_deviation,
            commodity_supply=self._read_per_period(
                node_id, item.get("commodity_supply", []), "commodity", self._commodities
            ),
            hospital_capacity=self._read_per_period(
                node_id, item.get("hospital_capacity", []), "injury", self._injuries
            ),
            construction_cost=construction_cost,
            vehicle_availability=self._read_availability(node_id, item.get("vehicle_availability", [])),
        )

    def _read_demands(
        self, node_id: str, entries: Iterable[Dict[str, Any]], key: str, known: Set[str]
    ) -> Tuple[Dict[Tuple[str, int], float], Dict[Tuple[str, int], float]]:
        demand: Dict[Tuple[str, int], float] = {}
        deviation: Dict[Tuple[str, int], float] = {}
        for entry in entries:
            entity = self._ref(entry, key, known, node_id)
            period = self._period(entry, node_id)
            demand[(entity, period)] = self._quantity(entry, "amount", 0.0)
            deviation[(entity, period)] = self._quantity(entry, "deviation", 0.0)
        return demand, deviation

    def _read_per_period(
        self, node_id: str, entries: Iterable[Dict[str, Any]], key: str, known: Set[str]
    ) -> Dict[Tuple[str, int], float]:
        """Entries without a period apply to every period."""

        table: Dict[Tuple[str, int], float] = {}
        for entry in entries:
            entity = self._ref(entry, key, known, node_id)
            amount = self._quantity(entry, "amount")
            if "period" in entry:
                table[(entity, self._period(entry, node_id))] = amount
            else:
                for period in range(1, self._periods + 1):
                    table[(entity, period)] = amount
        return dict(sorted(table.items()))

    def _read_availability(self, node_id: str, entries: Iterable[Dict[str, Any]]) -> Dict[Tuple[str, int], int]:
        table: Dict[Tuple[str, int], int] = {}
        for entry in entries:
            vehicle = self._ref(entry, "vehicle", self._vehicles, node_id)
            period = self._period(entry, node_id) if "period" in entry else 1
            count = entry.get("count", 0)
            if not isinstance(count, (int, float)) or isinstance(count, bool) or count != int(count):
                raise InstanceError("invalid_count", f"node {node_id}: vehicle count must be an integer")
            if count < 0:
                raise InstanceError("negative_quantity", f"node {node_id}: negative vehicle count {count}")
            table[(vehicle, period)] = table.get((vehicle, period), 0) + int(count)
        return dict(sorted(table.items()))

    def _read_travel_times(self, entries: List[Dict[str, Any]]) -> Dict[Tuple[str, str, str], int]:
        table: Dict[Tuple[str, str, str], int] = {}
        for entry in entries:
            origin = self._ref(entry, "from", self._nodes, "travel_time")
            destination = self._ref(entry, "to", self._nodes, "travel_time")
            vehicle = self._ref(entry, "vehicle", self._vehicles, "travel_time")
            periods = entry.get("periods")
            if not isinstance(periods, (int, float)) or isinstance(periods, bool) or periods != int(periods):
                raise InstanceError(
                    "invalid_travel_time", f"travel time {origin}->{destination} ({vehicle}) must be an integer"
                )
            if periods < 0:
                raise InstanceError(
                    "negative_quantity", f"negative travel time {origin}->{destination} ({vehicle})"
                )
            if periods > 0:
                table[(origin, destination, vehicle)] = int(periods)
        return dict(sorted(table.items()))

    def _read_budgets(
        self, demand_nodes: List[str]
    ) -> Tuple[Dict[Tuple[str, str, int], float], Dict[Tuple[str, str, int], float]]:
        raw = self._data.get("robust_budgets") or {}
        if not isinstance(raw, dict):
            raise InstanceError("syntax_error", "robust_budgets must be an object")
        injury: Dict[Tuple[str, str, int], float] = {}
        commodity: Dict[Tuple[str, str, int], float] = {}
        for kind, known, table in (
            ("injury", self._injuries, injury),
            ("commodity", self._commodities, commodity),
        ):
            for entry in raw.get(kind, []):
                entity = self._ref(entry, kind, known, "robust_budgets")
                node_id = self._ref(entry, "node", self._nodes, "robust_budgets")
                if node_id not in demand_nodes:
                    raise InstanceError(
                        "field_role_mismatch", f"field/role mismatch: budget declared for non-demand node {node_id}"
                    )
                period = self._period(entry, "robust_budgets")
                table[(entity, node_id, period)] = self._quantity(entry, "gamma")
        return injury, commodity

    def _read_big_m(self) -> Optional[float]:
        raw = self._data.get("big_m", "auto")
        if raw is None or raw == "auto":
            return None
        if not isinstance(raw, (int, float)) or isinstance(raw, bool):
            raise InstanceError("syntax_error", f"big_m must be 'auto' or a number, got {raw!r}")
        if raw <= 0:
            raise InstanceError("negative_quantity", "big_m must be positive")
        return float(raw)

    # -- primitives ------------------------------------------------------------------
    def _list(self, key: str) -> List[Dict[str, Any]]:
        value = self._data.get(key, [])
        if not isinstance(value, list) or not all(isinstance(item, dict) for item in value):
            raise InstanceError("syntax_error", f"{key} must be a list of objects")
        return value

    @staticmethod
    def _id(item: Dict[str, Any], what: str) -> str:
        value = item.get("id")
        if value is None or str(value) == "":
            raise InstanceError("syntax_error", f"{what} entry without an id")
        return str(value)

    @staticmethod
    def _unique(what: str, ids: Iterable[str]) -> Set[str]:
        seen: Set[str] = set()
        for value in ids:
            if value in seen:
                raise InstanceError("duplicate_id", f"duplicate {what} id {value}")
            seen.add(value)
        return seen

    @staticmethod
    def _check_refs(what: str, refs: Iterable[str], known: Set[str]) -> None:
        for ref in refs:
            if ref not in known:
                raise InstanceError("unknown_reference", f"unknown {what} {ref}")

    @staticmethod
    def _ref(entry: Dict[str, Any], key: str, known: Set[str], where: str) -> str:
        value = entry.get(key)
        if value is None or str(value) not in known:
            raise InstanceError("unknown_reference", f"{where}: unknown {key} {value!r}")
        return str(value)

    def _period(self, entry: Dict[str, Any], where: str) -> int:
        period = entry.get("period")
        if not isinstance(period, int) or isinstance(period, bool) or not 1 <= period <= self._periods:
            raise InstanceError("period_out_of_range", f"{where}: period {period!r} outside 1..{self._periods}")
        return period

    @staticmethod
    def _quantity(item: Dict[str, Any], key: str, default: Optional[float] = None) -> float:
        value = item.get(key, default)
        if value is None:
            raise InstanceError("syntax_error", f"missing {key}")
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise InstanceError("syntax_error", f"{key} must be a number, got {value!r}")
        if value < 0:
            raise InstanceError("negative_quantity", f"negative {key} {value}")
        return float(value)


__all__ = ["load_instance", "parse_instance", "serialize_instance", "instance_to_dict"]
