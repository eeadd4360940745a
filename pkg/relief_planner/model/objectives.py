"""Linear objective vectors for the four planning goals."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Sequence

import numpy as np

from ..instance import Instance
from .program import VariableIndex

OBJECTIVE_IDS = (1, 2, 3, 4)
OBJECTIVE_NAMES = {
    1: "unserved_injuries",
    2: "unmet_commodity_demand",
    3: "system_cost",
    4: "hospital_underutilization",
}


@dataclass(frozen=True)
class ObjectiveVector:
    """Sparse coefficients over the columns of a VariableIndex plus a constant offset."""

    objective: int
    coefficients: Dict[int, float] = field(default_factory=dict)
    offset: float = 0.0

    def value(self, values: Sequence[float]) -> float:
        return float(sum(coef * values[col] for col, coef in self.coefficients.items()) + self.offset)

    def dense(self, num_columns: int) -> np.ndarray:
        vector = np.zeros(num_columns)
        for col, coef in self.coefficients.items():
            vector[col] = coef
        return vector


def build_objective(inst: Instance, vix: VariableIndex, which: int) -> ObjectiveVector:
    if which not in OBJECTIVE_IDS:
        raise ValueError(f"unknown objective id {which!r}; expected one of {OBJECTIVE_IDS}")

    coefficients: Dict[int, float] = {}
    offset = 0.0
    if which == 1:
        priority = {h.id: h.priority for h in inst.injuries}
        for (_, h, _r, _t), col in vix.family("dev_injury"):
            coefficients[col] = priority[h]
    elif which == 2:
        priority = {a.id: a.priority for a in inst.commodities}
        for (_, a, _p, _t), col in vix.family("dev_commodity"):
            coefficients[col] = priority[a]
    elif which == 3:
        cost = {v.id: v.operating_cost for v in inst.vehicles}
        for (_, o, p, v, _t), col in vix.family("Z"):
            coefficients[col] = inst.travel(o, p, v) * cost[v]
        for (_, p), col in vix.family("u"):
            coefficients[col] = float(inst.node(p).construction_cost or 0.0)
    else:
        # Installed capacity is counted at permanent hospitals only; donated capacity is not recounted.
        offset = sum(
            inst.capacity(h.id, o, t)
            for h in inst.injuries
            for t in inst.period_range
            for o in inst.hospital_nodes
        )
        for _coord, col in vix.family("dew"):
            coefficients[col] = -1.0

    return ObjectiveVector(
        objective=which,
        coefficients={col: coef for col, coef in coefficients.items() if coef != 0.0},
        offset=float(offset),
    )


def build_objectives(inst: Instance, vix: VariableIndex) -> Dict[int, ObjectiveVector]:
    return {which: build_objective(inst, vix, which) for which in OBJECTIVE_IDS}


__all__ = ["OBJECTIVE_IDS", "OBJECTIVE_NAMES", "ObjectiveVector", "build_objective", "build_objectives"]
