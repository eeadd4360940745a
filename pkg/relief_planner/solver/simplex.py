"""Dense two-phase primal simplex with Bland's anti-cycling rule."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..config import load_settings
from ..model.program import EQ, GE, LE, LinearProgram

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration_limit"


@dataclass
class SimplexConfig:
    feasibility_tol: float = 1e-7
    optimality_tol: float = 1e-9
    pivot_tol: float = 1e-11
    iteration_limit: Optional[int] = None


@dataclass
class LpOutcome:
    status: str
    objective: Optional[float] = None
    values: Optional[np.ndarray] = None
    tight_rows: List[bool] = field(default_factory=list)
    iterations: int = 0
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    factors = tableau[:, col].copy()
    factors[row] = 0.0
    tableau -= np.outer(factors, tableau[row])
    tableau[np.abs(tableau) < 1e-13] = 0.0


def _iterate(
    tableau: np.ndarray,
    basis: List[int],
    allowed: int,
    config: SimplexConfig,
    budget: int,
) -> tuple:
    """Pivot until optimal; entering and leaving choices follow Bland's rule.

    The entering column is the lowest-index column with a negative reduced cost.
    Among rows tied on the ratio test, the leaving row is the one whose basic
    variable has the lowest column index, not the lowest row position.
    """

    iterations = 0
    while True:
        costs = tableau[-1, :allowed]
        entering = np.flatnonzero(costs < -config.optimality_tol)
        if entering.size == 0:
            return OPTIMAL, iterations
        if iterations >= budget:
            return ITERATION_LIMIT, iterations
        col = int(entering[0])
        column = tableau[:-1, col]
        candidates = np.flatnonzero(column > config.pivot_tol)
        if candidates.size == 0:
            return UNBOUNDED, iterations
        ratios = tableau[candidates, -1] / column[candidates]
        best = float(ratios.min())
        ties = candidates[ratios <= best + 1e-12 * max(1.0, abs(best))]
        row = int(min(ties, key=lambda i: basis[i]))
        _pivot(tableau, row, col)
        basis[row] = col
        iterations += 1


def solve_dense(
    cost: np.ndarray,
    matrix: np.ndarray,
    senses: Sequence[str],
    rhs: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    *,
    offset: float = 0.0,
    config: Optional[SimplexConfig] = None,
) -> LpOutcome:
    """Minimize ``cost @ x + offset`` s.t. ``matrix x (senses) rhs`` and ``lower <= x <= upper``."""

    cfg = config or SimplexConfig()
    budget = cfg.iteration_limit if cfg.iteration_limit is not None else load_settings().iteration_limit
    cost = np.asarray(cost, dtype=float)
    lower = np.asarray(lower, dtype=float)
    upper = np.asarray(upper, dtype=float)
    n = cost.size
    matrix = np.asarray(matrix, dtype=float).reshape(-1, n)
    if np.any(~np.isfinite(lower)):
        raise ValueError("every column needs a finite lower bound")
    if np.any(lower > upper + cfg.feasibility_tol):
        return LpOutcome(status=INFEASIBLE, diagnostics={"reason": "crossed bounds"})

    # Shift x = lower + y and add explicit rows for finite upper bounds.
    bounded = np.flatnonzero(np.isfinite(upper))
    bound_rows = np.zeros((bounded.size, n))
    bound_rows[np.arange(bounded.size), bounded] = 1.0
    rows = np.vstack([matrix, bound_rows]) if bounded.size else matrix.copy()
    row_senses = list(senses) + [LE] * bounded.size
    row_rhs = np.concatenate([np.asarray(rhs, dtype=float) - matrix @ lower, (upper - lower)[bounded]])

    m = rows.shape[0]
    for i in range(m):
        if row_rhs[i] < 0 or (row_rhs[i] == 0 and row_senses[i] == GE):
            rows[i] *= -1.0
            row_rhs[i] *= -1.0
            row_senses[i] = {LE: GE, GE: LE, EQ: EQ}[row_senses[i]]

    slack_rows = [i for i in range(m) if row_senses[i] in (LE, GE)]
    artificial_rows = [i for i in range(m) if row_senses[i] in (GE, EQ)]
    slack_start = n
    art_start = n + len(slack_rows)
    width = art_start + len(artificial_rows)

    tableau = np.zeros((m + 1, width + 1))
    tableau[:m, :n] = rows
    tableau[:m, -1] = row_rhs
    basis = [0] * m
    for k, i in enumerate(slack_rows):
        tableau[i, slack_start + k] = 1.0 if row_senses[i] == LE else -1.0
        if row_senses[i] == LE:
            basis[i] = slack_start + k
    for k, i in enumerate(artificial_rows):
        tableau[i, art_start + k] = 1.0
        basis[i] = art_start + k

    total_iterations = 0
    phase_one_objective = 0.0
    if artificial_rows:
        tableau[-1, art_start:width] = 1.0
        for i in artificial_rows:
            tableau[-1] -= tableau[i]
        status, used = _iterate(tableau, basis, width, cfg, budget)
        total_iterations += used
        if status == ITERATION_LIMIT:
            return LpOutcome(status=ITERATION_LIMIT, iterations=total_iterations, diagnostics={"phase": 1})
        phase_one_objective = -float(tableau[-1, -1])
        logger.debug("Phase 1 finished after %d pivots, infeasibility %.3g", used, phase_one_objective)
        if phase_one_objective > cfg.feasibility_tol:
            return LpOutcome(
                status=INFEASIBLE,
                iterations=total_iterations,
                diagnostics={"phase_one_objective": phase_one_objective},
            )
        redundant: List[int] = []
        for i in range(m):
            if basis[i] < art_start:
                continue
            candidates = np.flatnonzero(np.abs(tableau[i, :art_start]) > cfg.pivot_tol)
            if candidates.size:
                _pivot(tableau, i, int(candidates[0]))
                basis[i] = int(candidates[0])
            else:
                redundant.append(i)
        if redundant:
            keep = [i for i in range(m) if i not in set(redundant)]
            tableau = tableau[keep + [m]]
            basis = [basis[i] for i in keep]
            m = len(keep)
        tableau = np.delete(tableau, np.arange(art_start, width), axis=1)
        width = art_start

    tableau[-1] = 0.0
    tableau[-1, :n] = cost
    for i, col in enumerate(basis):
        if tableau[-1, col] != 0.0:
            tableau[-1] -= tableau[-1, col] * tableau[i]
    status, used = _iterate(tableau, basis, width, cfg, budget - total_iterations)
    total_iterations += used
    logger.debug("Phase 2 finished with status %s after %d pivots", status, used)
    if status != OPTIMAL:
        return LpOutcome(status=status, iterations=total_iterations, diagnostics={"phase": 2})

    shifted = np.zeros(width)
    for i, col in enumerate(basis):
        shifted[col] = tableau[i, -1]
    values = lower + shifted[:n]
    values[np.abs(values) < 1e-12] = 0.0
    activity = matrix @ values
    target = np.asarray(rhs, dtype=float)
    tight = [bool(abs(activity[i] - target[i]) <= cfg.feasibility_tol * (1.0 + abs(target[i]))) for i in range(target.size)]
    return LpOutcome(
        status=OPTIMAL,
        objective=float(cost @ values + offset),
        values=values,
        tight_rows=tight,
        iterations=total_iterations,
        diagnostics={"phase_one_objective": phase_one_objective},
    )


def solve_lp(
    lp: LinearProgram,
    *,
    lower: Optional[Sequence[float]] = None,
    upper: Optional[Sequence[float]] = None,
    config: Optional[SimplexConfig] = None,
) -> LpOutcome:
    """Solve the continuous relaxation of ``lp``; integrality flags are ignored."""

    matrix, senses, rhs = lp.dense()
    return solve_dense(
        lp.objective_vector(),
        matrix,
        senses,
        rhs,
        np.asarray(lp.lower if lower is None else lower, dtype=float),
        np.asarray(lp.upper if upper is None else upper, dtype=float),
        offset=lp.objective_offset,
        config=config,
    )


__all__ = [
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
    "ITERATION_LIMIT",
    "SimplexConfig",
    "LpOutcome",
    "solve_dense",
    "solve_lp",
]
