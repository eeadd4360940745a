"""Shipment tables: what moves where, when and on which vehicle."""
from __future__ import annotations

from typing import Dict, List

import pandas as pd

from ..checker import Solution

ROUTE_COLUMNS = ["kind", "entity", "origin", "from_node", "to_node", "vehicle", "period", "quantity"]


def route_table(sol: Solution, *, min_quantity: float = 1e-9) -> pd.DataFrame:
    rows: List[Dict[str, object]] = []
    for family, kind in (("U", "commodity"), ("W", "injury")):
        for (entity, origin, o, p, v, t), value in sol.entries(family):
            if value > min_quantity:
                rows.append(
                    {
                        "kind": kind,
                        "entity": entity,
                        "origin": origin,
                        "from_node": o,
                        "to_node": p,
                        "vehicle": v,
                        "period": t,
                        "quantity": value,
                    }
                )
    for (o, p, v, t), value in sol.entries("Z"):
        if value > min_quantity:
            rows.append(
                {
                    "kind": "vehicle",
                    "entity": v,
                    "origin": o,
                    "from_node": o,
                    "to_node": p,
                    "vehicle": v,
                    "period": t,
                    "quantity": value,
                }
            )
    frame = pd.DataFrame(rows, columns=ROUTE_COLUMNS)
    return frame.sort_values(["kind", "period", "entity", "from_node", "to_node", "vehicle"], kind="mergesort").reset_index(drop=True)


__all__ = ["ROUTE_COLUMNS", "route_table"]
