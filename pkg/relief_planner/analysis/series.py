"""Per-period unmet demand derived from a solution's flows."""
from __future__ import annotations

from typing import Dict, List

import pandas as pd

from ..checker import Solution, served_to_date, worst_case_deviation
from ..instance import Instance

SERIES_COLUMNS = [
    "kind",
    "entity",
    "node",
    "period",
    "robust_demand",
    "served",
    "cumulative_shortfall",
    "shortfall",
]


def shortfall_series(inst: Instance, sol: Solution) -> pd.DataFrame:
    """Cumulative and per-period shortfall for every (kind, entity, demand node, period).

    Robust demand is the nominal cumulative demand plus the worst deviation the budget
    allows; ``shortfall`` is the period-over-period change of the cumulative value.
    """

    rows: List[Dict[str, object]] = []
    for kind, entities in (("injury", inst.injuries), ("commodity", inst.commodities)):
        for entity in entities:
            for node in inst.demand_nodes:
                previous = 0.0
                for t in inst.period_range:
                    nominal = sum(inst.demand(kind, entity.id, node, s) for s in range(1, t + 1))  # type: ignore[arg-type]
                    robust = nominal + worst_case_deviation(inst, kind, entity.id, node, t)
                    served = served_to_date(inst, sol, kind, entity.id, node, t)
                    cumulative = max(0.0, robust - served)
                    rows.append(
                        {
                            "kind": kind,
                            "entity": entity.id,
                            "node": node,
                            "period": t,
                            "robust_demand": robust,
                            "served": served,
                            "cumulative_shortfall": cumulative,
                            "shortfall": cumulative - previous,
                        }
                    )
                    previous = cumulative
    return pd.DataFrame(rows, columns=SERIES_COLUMNS)


def series_value(series: pd.DataFrame, kind: str, entity: str, node: str, period: int, column: str = "cumulative_shortfall") -> float:
    match = series[
        (series["kind"] == kind)
        & (series["entity"] == entity)
        & (series["node"] == node)
        & (series["period"] == period)
    ]
    if match.empty:
        raise KeyError((kind, entity, node, period))
    return float(match.iloc[0][column])


__all__ = ["SERIES_COLUMNS", "shortfall_series", "series_value"]
