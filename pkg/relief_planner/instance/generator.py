"""Seeded random tiny instances for oracle cross-checks."""
from __future__ import annotations

from typing import Dict, List, Tuple

import numpy as np

from .schema import (
    CANDIDATE,
    DEMAND,
    HOSPITAL,
    SUPPLY,
    CommoditySpec,
    InjurySpec,
    Instance,
    Node,
    VehicleSpec,
)


def random_instance(
    seed: int = 0,
    *,
    max_nodes: int = 3,
    max_periods: int = 2,
    max_fleet: int = 2,
    max_arcs: int = 3,
) -> Instance:
    """Build a valid instance small enough for exhaustive enumeration.

    Node ``n1`` is the damaged area, ``n2`` hosts supply and the permanent
    hospital, and an optional ``n3`` is a temporary-hospital candidate.
    """

    rng = np.random.default_rng(seed)
    periods = int(rng.integers(1, max_periods + 1))
    node_count = int(rng.integers(2, max_nodes + 1))
    node_ids = [f"n{i}" for i in range(1, node_count + 1)]

    commodity = CommoditySpec(
        id="A1",
        weight=float(rng.integers(1, 3)),
        volume=float(rng.integers(1, 3)),
        priority=float(rng.integers(1, 4)),
    )
    injury = InjurySpec(id="H1", priority=float(rng.integers(1, 4)))

    vehicle_kinds = ["mixed"] if rng.random() < 0.5 else ["truck", "ambulance"]
    vehicles: List[VehicleSpec] = []
    for kind in vehicle_kinds:
        vehicles.append(
            VehicleSpec(
                id=kind,
                load_capacity=float(rng.integers(3, 10)),
                volume_capacity=float(rng.integers(3, 10)),
                injury_capacity=0.0 if kind == "truck" else float(rng.integers(1, 5)),
                resource_transfer_capacity=float(rng.integers(0, 20)),
                operating_cost=float(rng.integers(1, 6)),
                commodity_compat=frozenset() if kind == "ambulance" else frozenset({"A1"}),
                injury_compat=frozenset() if kind == "truck" else frozenset({"H1"}),
            )
        )

    candidate_pairs = [(o, p) for o in node_ids for p in node_ids if o != p]
    travel_time: Dict[Tuple[str, str, str], int] = {}
    arc_budget = int(rng.integers(0, max_arcs + 1))
    for _ in range(arc_budget):
        o, p = candidate_pairs[int(rng.integers(0, len(candidate_pairs)))]
        vehicle = vehicles[int(rng.integers(0, len(vehicles)))].id
        travel_time[(o, p, vehicle)] = int(rng.integers(1, 3))

    fleet_left = int(rng.integers(0, max_fleet + 1))
    availability: Dict[str, Dict[Tuple[str, int], int]] = {node_id: {} for node_id in node_ids}
    while fleet_left > 0:
        node_id = node_ids[int(rng.integers(0, node_count))]
        vehicle = vehicles[int(rng.integers(0, len(vehicles)))].id
        period = int(rng.integers(1, periods + 1))
        availability[node_id][(vehicle, period)] = availability[node_id].get((vehicle, period), 0) + 1
        fleet_left -= 1

    def demand_table() -> Tuple[Dict[Tuple[str, int], float], Dict[Tuple[str, int], float]]:
        amounts: Dict[Tuple[str, int], float] = {}
        deviations: Dict[Tuple[str, int], float] = {}
        for t in range(1, periods + 1):
            amounts[("X", t)] = float(rng.integers(0, 8))
            deviations[("X", t)] = float(rng.integers(0, 3))
        return amounts, deviations

    commodity_amounts, commodity_devs = demand_table()
    injury_amounts, injury_devs = demand_table()

    def rekey(table: Dict[Tuple[str, int], float], entity: str) -> Dict[Tuple[str, int], float]:
        return {(entity, t): value for (_, t), value in table.items()}

    nodes: List[Node] = [
        Node(
            id="n1",
            roles=frozenset({DEMAND}),
            commodity_demand=rekey(commodity_amounts, "A1"),
            commodity_deviation=rekey(commodity_devs, "A1"),
            injury_demand=rekey(injury_amounts, "H1"),
            injury_deviation=rekey(injury_devs, "H1"),
            vehicle_availability=availability["n1"],
        ),
        Node(
            id="n2",
            roles=frozenset({SUPPLY, HOSPITAL}),
            commodity_supply={("A1", t): float(rng.integers(0, 10)) for t in range(1, periods + 1)},
            hospital_capacity={("H1", t): float(rng.integers(0, 10)) for t in range(1, periods + 1)},
            vehicle_availability=availability["n2"],
        ),
    ]
    if node_count >= 3:
        nodes.append(
            Node(
                id="n3",
                roles=frozenset({CANDIDATE}),
                construction_cost=float(rng.integers(0, 20)),
                vehicle_availability=availability["n3"],
            )
        )

    draft = Instance(
        periods=periods,
        nodes=tuple(nodes),
        commodities=(commodity,),
        injuries=(injury,),
        vehicles=tuple(vehicles),
        travel_time=dict(sorted(travel_time.items())),
    )
    injury_budget = {}
    commodity_budget = {}
    for t in range(1, periods + 1):
        injury_budget[("H1", "n1", t)] = float(
            rng.uniform(0.0, len(draft.uncertain_periods("injury", "H1", "n1", t)))
        )
        commodity_budget[("A1", "n1", t)] = float(
            rng.uniform(0.0, len(draft.uncertain_periods("commodity", "A1", "n1", t)))
        )
    return Instance(
        periods=periods,
        nodes=tuple(nodes),
        commodities=(commodity,),
        injuries=(injury,),
        vehicles=tuple(vehicles),
        travel_time=dict(sorted(travel_time.items())),
        robust_budget_injury=injury_budget,
        robust_budget_commodity=commodity_budget,
    )


__all__ = ["random_instance"]
