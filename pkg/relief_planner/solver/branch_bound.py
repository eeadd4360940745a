"""Best-bound branch and bound over simplex relaxations."""
from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import load_settings
from ..model.program import LinearProgram
from .simplex import INFEASIBLE, ITERATION_LIMIT, OPTIMAL, UNBOUNDED, SimplexConfig, solve_dense

logger = logging.getLogger(__name__)

NODE_LIMIT = "node_limit"
SNAP_TOLERANCE = 1e-9


@dataclass
class BranchBoundConfig:
    node_limit: Optional[int] = None
    integrality_tol: float = 1e-6
    simplex: SimplexConfig = field(default_factory=SimplexConfig)


@dataclass
class MipOutcome:
    status: str
    objective: Optional[float] = None
    values: Optional[np.ndarray] = None
    nodes: int = 0
    gap: float = 0.0
    best_bound: Optional[float] = None
    incumbent_history: List[float] = field(default_factory=list)
    backend: str = "embedded"

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL

    @property
    def has_incumbent(self) -> bool:
        return self.values is not None


def _branching_column(values: np.ndarray, integer_columns: Sequence[int], tol: float) -> Optional[int]:
    """Most fractional integer column; ties go to the lowest index."""

    best: Optional[int] = None
    best_score = -1.0
    for col in integer_columns:
        fraction = values[col] - math.floor(values[col])
        distance = min(fraction, 1.0 - fraction)
        if distance <= tol:
            continue
        if distance > best_score + 1e-12:
            best, best_score = col, distance
    return best


def _relative_gap(incumbent: Optional[float], bound: Optional[float]) -> float:
    if incumbent is None or bound is None:
        return math.inf
    return max(0.0, incumbent - bound) / max(1.0, abs(incumbent))


def solve_mip(
    lp: LinearProgram,
    *,
    lower: Optional[Sequence[float]] = None,
    upper: Optional[Sequence[float]] = None,
    config: Optional[BranchBoundConfig] = None,
) -> MipOutcome:
    """Exact optimum of ``lp`` honouring integer and binary columns."""

    cfg = config or BranchBoundConfig()
    limit = cfg.node_limit if cfg.node_limit is not None else load_settings().node_limit
    matrix, senses, rhs = lp.dense()
    cost = lp.objective_vector()
    integer_columns = lp.integer_columns()

    root_lower = np.asarray(lp.lower if lower is None else lower, dtype=float).copy()
    root_upper = np.asarray(lp.upper if upper is None else upper, dtype=float).copy()
    for col in integer_columns:
        root_lower[col] = math.ceil(root_lower[col] - cfg.integrality_tol)
        if math.isfinite(root_upper[col]):
            root_upper[col] = math.floor(root_upper[col] + cfg.integrality_tol)

    incumbent: Optional[float] = None
    incumbent_values: Optional[np.ndarray] = None
    history: List[float] = []
    nodes = 0
    counter = 0
    heap: List[Tuple[float, int, np.ndarray, np.ndarray]] = [(-math.inf, counter, root_lower, root_upper)]

    def prunable(bound: float) -> bool:
        return incumbent is not None and bound >= incumbent - 1e-9 * (1.0 + abs(incumbent))

    while heap:
        parent_bound, _, node_lower, node_upper = heapq.heappop(heap)
        if prunable(parent_bound):
            continue
        current: Optional[Tuple[np.ndarray, np.ndarray]] = (node_lower, node_upper)
        current_bound = parent_bound
        while current is not None:
            if nodes >= limit:
                open_bounds = [entry[0] for entry in heap] + [current_bound]
                best_bound = min(open_bounds)
                logger.warning("Node limit %d reached with incumbent %s", limit, incumbent)
                return MipOutcome(
                    status=NODE_LIMIT,
                    objective=incumbent,
                    values=incumbent_values,
                    nodes=nodes,
                    gap=_relative_gap(incumbent, best_bound if math.isfinite(best_bound) else None),
                    best_bound=best_bound if math.isfinite(best_bound) else None,
                    incumbent_history=history,
                )
            nodes += 1
            node_lower, node_upper = current
            relaxation = solve_dense(
                cost, matrix, senses, rhs, node_lower, node_upper, offset=lp.objective_offset, config=cfg.simplex
            )
            if relaxation.status == INFEASIBLE:
                current = None
                continue
            if relaxation.status == UNBOUNDED:
                return MipOutcome(status=UNBOUNDED, nodes=nodes, gap=math.inf, incumbent_history=history)
            if relaxation.status == ITERATION_LIMIT:
                return MipOutcome(
                    status=ITERATION_LIMIT,
                    objective=incumbent,
                    values=incumbent_values,
                    nodes=nodes,
                    gap=math.inf,
                    incumbent_history=history,
                )
            assert relaxation.values is not None and relaxation.objective is not None
            if prunable(relaxation.objective):
                current = None
                continue
            values = relaxation.values
            col = _branching_column(values, integer_columns, cfg.integrality_tol)
            if col is None:
                snapped = values.copy()
                for index in integer_columns:
                    nearest = round(snapped[index])
                    if abs(snapped[index] - nearest) <= SNAP_TOLERANCE:
                        snapped[index] = float(nearest)
                incumbent = lp.objective_value(snapped)
                incumbent_values = snapped
                history.append(incumbent)
                logger.debug("Incumbent %.6g at node %d", incumbent, nodes)
                current = None
                continue
            floor_upper = node_upper.copy()
            floor_upper[col] = math.floor(values[col])
            ceil_lower = node_lower.copy()
            ceil_lower[col] = math.ceil(values[col])
            counter += 1
            heapq.heappush(heap, (relaxation.objective, counter, ceil_lower, node_upper))
            current = (node_lower, floor_upper)
            current_bound = relaxation.objective

    if incumbent is None:
        return MipOutcome(status=INFEASIBLE, nodes=nodes, gap=math.inf, incumbent_history=history)
    return MipOutcome(
        status=OPTIMAL,
        objective=incumbent,
        values=incumbent_values,
        nodes=nodes,
        gap=0.0,
        best_bound=incumbent,
        incumbent_history=history,
    )


__all__ = ["NODE_LIMIT", "BranchBoundConfig", "MipOutcome", "solve_mip"]
