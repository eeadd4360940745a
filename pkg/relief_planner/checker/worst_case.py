"""Worst-case demand realization inside the budgeted uncertainty set."""
from __future__ import annotations

import itertools
import math
from typing import Tuple

from ..errors import SizeGuardError
from ..instance import Instance, arcs_by_node
from .solution import Solution

MAX_UNCERTAIN_PERIODS = 20


def served_to_date(inst: Instance, sol: Solution, kind: str, entity: str, node: str, t: int) -> float:
    """Cumulative quantity the solution's flows account for at ``node`` up to ``t``.

    Commodities: net arrivals at the demand node. Injuries: net evacuations out of it.
    """

    outgoing, incoming = arcs_by_node(inst)

    def arrived(family: str, origin: str) -> float:
        return sum(
            sol.get(family, entity, origin, o, p, v, s)
            for o, p, v in incoming[node]
            for s in range(1, t - inst.travel(o, p, v) + 1)
        )

    def departed(family: str, origin: str) -> float:
        return sum(sol.get(family, entity, origin, o, p, v, s) for o, p, v in outgoing[node] for s in range(1, t + 1))

    if kind == "commodity":
        return sum(arrived("U", r) - departed("U", r) for r in inst.supply_nodes)
    return departed("W", node) - arrived("W", node)


def worst_case_deviation(inst: Instance, kind: str, entity: str, node: str, t: int) -> float:
    """Largest total deviation any realization within the budget can add up to ``t``."""

    uncertain = inst.uncertain_periods(kind, entity, node, t)  # type: ignore[arg-type]
    if len(uncertain) > MAX_UNCERTAIN_PERIODS:
        raise SizeGuardError(
            f"{len(uncertain)} uncertain periods exceed the enumeration guard of {MAX_UNCERTAIN_PERIODS}"
        )
    if not uncertain:
        return 0.0
    gamma = min(inst.budget(kind, entity, node, t), float(len(uncertain)))  # type: ignore[arg-type]
    full = int(math.floor(gamma + 1e-12))
    fraction = gamma - full
    deviation = {s: inst.deviation(kind, entity, node, s) for s in uncertain}  # type: ignore[arg-type]

    best = 0.0
    for chosen in itertools.combinations(uncertain, full):
        total = sum(deviation[s] for s in chosen)
        rest = [deviation[s] for s in uncertain if s not in chosen]
        if fraction > 0 and rest:
            total += fraction * max(rest)
        best = max(best, total)
    return best


def worst_case_shortfall(
    inst: Instance,
    sol: Solution,
    entity: Tuple[str, str],
    node: str,
    t: int,
) -> float:
    """Maximum cumulative shortfall at (entity, node, t) over the uncertainty set."""

    kind, entity_id = entity
    if kind not in ("commodity", "injury"):
        raise ValueError(f"entity kind must be 'commodity' or 'injury', got {kind!r}")
    nominal = sum(inst.demand(kind, entity_id, node, s) for s in range(1, t + 1))  # type: ignore[arg-type]
    realized = nominal + worst_case_deviation(inst, kind, entity_id, node, t)
    return max(0.0, realized - served_to_date(inst, sol, kind, entity_id, node, t))


__all__ = ["MAX_UNCERTAIN_PERIODS", "served_to_date", "worst_case_deviation", "worst_case_shortfall"]
