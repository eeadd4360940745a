"""Time-expanded arc set derived from an instance."""
from __future__ import annotations

from typing import Dict, List, Tuple

from .schema import Instance

Arc = Tuple[str, str, str]


def arcs(inst: Instance) -> List[Arc]:
    """Triples (o, p, v) with travel time >= 1, in node/vehicle declaration order."""

    node_order = {node.id: index for index, node in enumerate(inst.nodes)}
    vehicle_order = {vehicle.id: index for index, vehicle in enumerate(inst.vehicles)}
    found = [
        (o, p, v)
        for (o, p, v), periods in inst.travel_time.items()
        if periods >= 1 and o != p and o in node_order and p in node_order and v in vehicle_order
    ]
    found.sort(key=lambda arc: (node_order[arc[0]], node_order[arc[1]], vehicle_order[arc[2]]))
    return found


def arcs_by_node(inst: Instance) -> Tuple[Dict[str, List[Arc]], Dict[str, List[Arc]]]:
    """Outgoing and incoming arcs per node, both in :func:`arcs` order."""

    outgoing: Dict[str, List[Arc]] = {node.id: [] for node in inst.nodes}
    incoming: Dict[str, List[Arc]] = {node.id: [] for node in inst.nodes}
    for arc in arcs(inst):
        outgoing[arc[0]].append(arc)
        incoming[arc[1]].append(arc)
    return outgoing, incoming


__all__ = ["Arc", "arcs", "arcs_by_node"]
