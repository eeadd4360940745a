"""Immutable problem description for the emergency logistics model."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, List, Literal, Optional, Tuple

DEMAND = "demand"
SUPPLY = "supply"
HOSPITAL = "permanent_hospital"
CANDIDATE = "temp_hospital_candidate"
ROLES = (DEMAND, SUPPLY, HOSPITAL, CANDIDATE)

EntityKind = Literal["commodity", "injury"]


@dataclass(frozen=True)
class CommoditySpec:
    id: str
    weight: float
    volume: float
    priority: float


@dataclass(frozen=True)
class InjurySpec:
    id: str
    priority: float


@dataclass(frozen=True)
class VehicleSpec:
    """One transport mode; ``operating_cost`` is charged per period of travel."""

    id: str
    load_capacity: float
    volume_capacity: float
    injury_capacity: float = 0.0
    resource_transfer_capacity: float = 0.0
    operating_cost: float = 0.0
    commodity_compat: FrozenSet[str] = frozenset()
    injury_compat: FrozenSet[str] = frozenset()

    def carries_commodity(self, commodity: str) -> bool:
        return commodity in self.commodity_compat

    def carries_injury(self, injury: str) -> bool:
        return injury in self.injury_compat


@dataclass(frozen=True)
class Node:
    """Network node; quantity maps are keyed by (entity id, period)."""

    id: str
    roles: FrozenSet[str] = frozenset()
    commodity_demand: Dict[Tuple[str, int], float] = field(default_factory=dict)
    commodity_deviation: Dict[Tuple[str, int], float] = field(default_factory=dict)
    injury_demand: Dict[Tuple[str, int], float] = field(default_factory=dict)
    injury_deviation: Dict[Tuple[str, int], float] = field(default_factory=dict)
    commodity_supply: Dict[Tuple[str, int], float] = field(default_factory=dict)
    hospital_capacity: Dict[Tuple[str, int], float] = field(default_factory=dict)
    construction_cost: Optional[float] = None
    vehicle_availability: Dict[Tuple[str, int], int] = field(default_factory=dict)

    def has_role(self, role: str) -> bool:
        return role in self.roles


@dataclass(frozen=True)
class Instance:
    """Complete model input. Never mutated after construction."""

    periods: int
    nodes: Tuple[Node, ...]
    commodities: Tuple[CommoditySpec, ...]
    injuries: Tuple[InjurySpec, ...]
    vehicles: Tuple[VehicleSpec, ...]
    travel_time: Dict[Tuple[str, str, str], int] = field(default_factory=dict)
    robust_budget_injury: Dict[Tuple[str, str, int], float] = field(default_factory=dict)
    robust_budget_commodity: Dict[Tuple[str, str, int], float] = field(default_factory=dict)
    big_m: Optional[float] = None

    # -- lookups -----------------------------------------------------------------
    @property
    def period_range(self) -> range:
        return range(1, self.periods + 1)

    @cached_property
    def _node_map(self) -> Dict[str, Node]:
        return {node.id: node for node in self.nodes}

    def node(self, node_id: str) -> Node:
        return self._node_map[node_id]

    def vehicle(self, vehicle_id: str) -> VehicleSpec:
        for vehicle in self.vehicles:
            if vehicle.id == vehicle_id:
                return vehicle
        raise KeyError(vehicle_id)

    def node_ids(self) -> List[str]:
        return [node.id for node in self.nodes]

    def nodes_with(self, role: str) -> List[str]:
        return [node.id for node in self.nodes if role in node.roles]

    @property
    def demand_nodes(self) -> List[str]:
        return self.nodes_with(DEMAND)

    @property
    def supply_nodes(self) -> List[str]:
        return self.nodes_with(SUPPLY)

    @property
    def hospital_nodes(self) -> List[str]:
        return self.nodes_with(HOSPITAL)

    @property
    def candidate_nodes(self) -> List[str]:
        return self.nodes_with(CANDIDATE)

    def travel(self, origin: str, destination: str, vehicle: str) -> int:
        return int(self.travel_time.get((origin, destination, vehicle), 0))

    def arrives_in_horizon(self, origin: str, destination: str, vehicle: str, period: int) -> bool:
        """True when a trip leaving at ``period`` reaches ``destination`` by the last period."""

        return period + self.travel(origin, destination, vehicle) <= self.periods

    # -- quantities ----------------------------------------------------------------
    def demand(self, kind: EntityKind, entity: str, node_id: str, period: int) -> float:
        node = self.node(node_id)
        table = node.commodity_demand if kind == "commodity" else node.injury_demand
        return float(table.get((entity, period), 0.0))

    def deviation(self, kind: EntityKind, entity: str, node_id: str, period: int) -> float:
        node = self.node(node_id)
        table = node.commodity_deviation if kind == "commodity" else node.injury_deviation
        return float(table.get((entity, period), 0.0))

    def supply(self, commodity: str, node_id: str, period: int) -> float:
        return float(self.node(node_id).commodity_supply.get((commodity, period), 0.0))

    def capacity(self, injury: str, node_id: str, period: int) -> float:
        return float(self.node(node_id).hospital_capacity.get((injury, period), 0.0))

    def availability(self, vehicle: str, node_id: str, period: int) -> int:
        return int(self.node(node_id).vehicle_availability.get((vehicle, period), 0))

    def fleet_size(self, vehicle: str) -> int:
        return sum(
            count
            for node in self.nodes
            for (vehicle_id, _), count in node.vehicle_availability.items()
            if vehicle_id == vehicle
        )

    def uncertain_periods(self, kind: EntityKind, entity: str, node_id: str, period: int) -> List[int]:
        """Periods s <= period whose demand deviation is nonzero."""

        return [s for s in range(1, period + 1) if self.deviation(kind, entity, node_id, s) > 0.0]

    def budget(self, kind: EntityKind, entity: str, node_id: str, period: int) -> float:
        table = self.robust_budget_commodity if kind == "commodity" else self.robust_budget_injury
        key = (entity, node_id, period)
        if key in table:
            return float(table[key])
        return float(len(self.uncertain_periods(kind, entity, node_id, period)))

    def big_m_value(self) -> float:
        """Explicit B, or the sum of every demand, deviation and supply."""

        if self.big_m is not None:
            return float(self.big_m)
        total = 0.0
        for node in self.nodes:
            for table in (
                node.commodity_demand,
                node.commodity_deviation,
                node.injury_demand,
                node.injury_deviation,
                node.commodity_supply,
            ):
                total += sum(table.values())
        return max(total, 1.0)

    # -- derived instances -------------------------------------------------------
    def with_gamma_scale(self, scale: float) -> "Instance":
        """Copy with every robust budget multiplied by ``scale``."""

        injury = {
            (h.id, r, t): self.budget("injury", h.id, r, t) * scale
            for h in self.injuries
            for r in self.demand_nodes
            for t in self.period_range
        }
        commodity = {
            (a.id, p, t): self.budget("commodity", a.id, p, t) * scale
            for a in self.commodities
            for p in self.demand_nodes
            for t in self.period_range
        }
        return replace(self, robust_budget_injury=injury, robust_budget_commodity=commodity)

    def without_deviations(self) -> "Instance":
        """Nominal copy: every deviation and every budget set to zero."""

        nodes = tuple(
            replace(
                node,
                commodity_deviation={key: 0.0 for key in node.commodity_deviation},
                injury_deviation={key: 0.0 for key in node.injury_deviation},
            )
            for node in self.nodes
        )
        injury = {key: 0.0 for key in self.robust_budget_injury}
        commodity = {key: 0.0 for key in self.robust_budget_commodity}
        return replace(self, nodes=nodes, robust_budget_injury=injury, robust_budget_commodity=commodity)


__all__ = [
    "DEMAND",
    "SUPPLY",
    "HOSPITAL",
    "CANDIDATE",
    "ROLES",
    "EntityKind",
    "CommoditySpec",
    "InjurySpec",
    "VehicleSpec",
    "Node",
    "Instance",
]
