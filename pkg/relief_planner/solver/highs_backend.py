"""Backend delegating to HiGHS through ``scipy.optimize.milp``."""
from __future__ import annotations

import logging
import math
from typing import Any, Dict, Optional, Sequence

import numpy as np

try:
    from scipy.optimize import Bounds, LinearConstraint, milp
except Exception as exc:  # pragma: no cover - optional dependency
    milp = None  # type: ignore[assignment]
    _IMPORT_ERROR: Optional[Exception] = exc
else:
    _IMPORT_ERROR = None

from ..errors import SolverError
from ..model.program import EQ, GE, LE, LinearProgram
from .base import MipBackend
from .branch_bound import NODE_LIMIT, SNAP_TOLERANCE, MipOutcome
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED

logger = logging.getLogger(__name__)


class HighsBackend(MipBackend):
    """Sparse MILP solve for models too large for the dense tableau."""

    name = "highs"

    def __init__(self, *, time_limit: Optional[float] = None, node_limit: Optional[int] = None) -> None:
        if milp is None:  # pragma: no cover - exercised only without dependency
            raise RuntimeError("scipy>=1.9 is required for HighsBackend") from _IMPORT_ERROR
        self.time_limit = time_limit
        self.node_limit = node_limit

    def _options(self) -> Dict[str, Any]:
        options: Dict[str, Any] = {"mip_rel_gap": 0.0, "disp": False}
        if self.time_limit is not None:
            options["time_limit"] = float(self.time_limit)
        if self.node_limit is not None:
            options["node_limit"] = int(self.node_limit)
        return options

    def solve(
        self,
        lp: LinearProgram,
        *,
        lower: Optional[Sequence[float]] = None,
        upper: Optional[Sequence[float]] = None,
    ) -> MipOutcome:
        cost = lp.objective_vector()
        integrality = np.zeros(lp.num_columns)
        integer_columns = lp.integer_columns()
        integrality[integer_columns] = 1
        bounds = Bounds(
            np.asarray(lp.lower if lower is None else lower, dtype=float),
            np.asarray(lp.upper if upper is None else upper, dtype=float),
        )
        constraints = []
        if lp.num_rows:
            row_lower = np.array([row.rhs if row.sense in (GE, EQ) else -np.inf for row in lp.rows])
            row_upper = np.array([row.rhs if row.sense in (LE, EQ) else np.inf for row in lp.rows])
            constraints.append(LinearConstraint(lp.sparse(), row_lower, row_upper))

        result = milp(cost, integrality=integrality, bounds=bounds, constraints=constraints, options=self._options())
        nodes = int(getattr(result, "mip_node_count", 0) or 0)
        logger.debug("HiGHS status %s (%s) after %d nodes", result.status, result.message, nodes)

        if result.status == 2:
            return MipOutcome(status=INFEASIBLE, nodes=nodes, gap=math.inf, backend=self.name)
        if result.status == 3:
            return MipOutcome(status=UNBOUNDED, nodes=nodes, gap=math.inf, backend=self.name)
        if result.status not in (0, 1):
            raise SolverError(
                f"HiGHS failed: {result.message}", status="error", diagnostics={"highs_status": int(result.status)}
            )
        if result.x is None:
            return MipOutcome(status=NODE_LIMIT, nodes=nodes, gap=math.inf, backend=self.name)

        values = np.asarray(result.x, dtype=float).copy()
        for col in integer_columns:
            nearest = round(values[col])
            if abs(values[col] - nearest) <= SNAP_TOLERANCE:
                values[col] = float(nearest)
        objective = float(cost @ values + lp.objective_offset)
        dual_bound = getattr(result, "mip_dual_bound", None)
        best_bound = float(dual_bound) + lp.objective_offset if dual_bound is not None else None
        status = OPTIMAL if result.status == 0 else NODE_LIMIT
        gap = 0.0 if status == OPTIMAL else float(getattr(result, "mip_gap", math.inf) or math.inf)
        if status != OPTIMAL:
            logger.warning("HiGHS stopped early (%s); gap %.3g", result.message, gap)
        return MipOutcome(
            status=status,
            objective=objective,
            values=values,
            nodes=nodes,
            gap=gap,
            best_bound=best_bound if best_bound is not None else objective,
            incumbent_history=[objective],
            backend=self.name,
        )


__all__ = ["HighsBackend"]
