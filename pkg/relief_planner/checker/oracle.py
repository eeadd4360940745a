"""Brute-force reference solvers for tiny problems.

``lattice_solve`` enumerates every integer point of a bounded MIP and solves the
continuous remainder with HiGHS; ``vertex_enumeration`` scans the basic solutions
of a small LP. Both exist to validate the production solvers.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import linprog

from ..config import load_settings
from ..errors import SizeGuardError
from ..instance import Instance
from ..model import assemble
from ..model.program import EQ, GE, LE, LinearProgram

logger = logging.getLogger(__name__)

PointFilter = Callable[[Dict[int, int]], bool]


@dataclass
class LatticeResult:
    status: str
    objective: Optional[float] = None
    values: Optional[np.ndarray] = None
    points: int = 0
    solved: int = 0


def _split_rows(lp: LinearProgram):
    matrix, senses, rhs = lp.dense()
    ub_rows: List[np.ndarray] = []
    ub_rhs: List[float] = []
    eq_rows: List[np.ndarray] = []
    eq_rhs: List[float] = []
    for row, sense, value in zip(matrix, senses, rhs):
        if sense == LE:
            ub_rows.append(row)
            ub_rhs.append(value)
        elif sense == GE:
            ub_rows.append(-row)
            ub_rhs.append(-value)
        else:
            eq_rows.append(row)
            eq_rhs.append(value)
    width = lp.num_columns
    a_ub = np.vstack(ub_rows) if ub_rows else np.zeros((0, width))
    a_eq = np.vstack(eq_rows) if eq_rows else np.zeros((0, width))
    return a_ub, np.asarray(ub_rhs), a_eq, np.asarray(eq_rhs)


def lattice_solve(
    lp: LinearProgram,
    *,
    max_points: Optional[int] = None,
    accept: Optional[PointFilter] = None,
) -> LatticeResult:
    """Enumerate all integer assignments within column bounds; LP over the rest."""

    guard = max_points if max_points is not None else load_settings().oracle_max_points
    integer_columns = lp.integer_columns()
    ranges: List[range] = []
    for col in integer_columns:
        low, high = lp.lower[col], lp.upper[col]
        if not math.isfinite(high):
            raise SizeGuardError(f"integer column {lp.names[col]} has no finite upper bound")
        ranges.append(range(int(math.ceil(low - 1e-9)), int(math.floor(high + 1e-9)) + 1))
    points = math.prod(len(r) for r in ranges) if ranges else 1
    if points > guard:
        raise SizeGuardError(f"{points} integer points exceed the oracle guard of {guard}")

    a_ub, b_ub, a_eq, b_eq = _split_rows(lp)
    cost = lp.objective_vector()
    best: Optional[float] = None
    best_values: Optional[np.ndarray] = None
    solved = 0
    unbounded = False
    for assignment in itertools.product(*ranges):
        fixed = dict(zip(integer_columns, assignment))
        if accept is not None and not accept(fixed):
            continue
        bounds = [
            (fixed[col], fixed[col]) if col in fixed else (lp.lower[col], None if math.isinf(lp.upper[col]) else lp.upper[col])
            for col in range(lp.num_columns)
        ]
        result = linprog(
            cost,
            A_ub=a_ub if a_ub.size else None,
            b_ub=b_ub if a_ub.size else None,
            A_eq=a_eq if a_eq.size else None,
            b_eq=b_eq if a_eq.size else None,
            bounds=bounds,
            method="highs",
        )
        solved += 1
        if result.status == 3:
            unbounded = True
            break
        if result.status != 0:
            continue
        value = float(result.fun) + lp.objective_offset
        if best is None or value < best - 1e-12:
            best, best_values = value, np.asarray(result.x, dtype=float)
    logger.debug("Lattice oracle: %d points, %d LPs, best %s", points, solved, best)
    if unbounded:
        return LatticeResult(status="unbounded", points=points, solved=solved)
    if best is None:
        return LatticeResult(status="infeasible", points=points, solved=solved)
    return LatticeResult(status="optimal", objective=best, values=best_values, points=points, solved=solved)


def oracle_solve(
    inst: Instance,
    which_objective: int = 1,
    *,
    strict_eq5: bool = False,
    max_points: Optional[int] = None,
) -> Optional[float]:
    """Exhaustive optimum over vehicle plans (Z) and openings (u); None if infeasible."""

    lp, vix = assemble(inst, which_objective, strict_eq5=strict_eq5)
    trips = [(coord, col) for coord, col in vix.family("Z")]

    def stock_feasible(fixed: Dict[int, int]) -> bool:
        # Vehicles can only leave a node they are standing at.
        for p in inst.node_ids():
            for v in inst.vehicles:
                for t in inst.period_range:
                    stock = float(sum(inst.availability(v.id, p, s) for s in range(1, t + 1)))
                    for (_, o, d, vehicle, s), col in trips:
                        if vehicle != v.id:
                            continue
                        if o == p and s <= t:
                            stock -= fixed[col]
                        if d == p and s <= t - inst.travel(o, d, vehicle):
                            stock += fixed[col]
                    if stock < -1e-9:
                        return False
        return True

    result = lattice_solve(lp, max_points=max_points, accept=stock_feasible)
    return result.objective


def vertex_enumeration(
    cost: Sequence[float],
    matrix: np.ndarray,
    senses: Sequence[str],
    rhs: Sequence[float],
    *,
    tol: float = 1e-7,
) -> Optional[float]:
    """Minimum of ``cost @ x`` over basic feasible solutions of {x >= 0, rows}; None if none exist.

    The feasible region must be bounded for the answer to be the LP optimum.
    """

    cost = np.asarray(cost, dtype=float)
    n = cost.size
    rows: List[np.ndarray] = []
    values: List[float] = []
    equality: List[bool] = []
    for row, sense, value in zip(np.asarray(matrix, dtype=float), senses, rhs):
        if sense == GE:
            rows.append(-row)
            values.append(-float(value))
        else:
            rows.append(row)
            values.append(float(value))
        equality.append(sense == EQ)
    for j in range(n):
        unit = np.zeros(n)
        unit[j] = -1.0
        rows.append(unit)
        values.append(0.0)
        equality.append(False)
    system = np.vstack(rows) if rows else np.zeros((0, n))
    bound = np.asarray(values)
    forced = [i for i, eq in enumerate(equality) if eq]

    best: Optional[float] = None
    for chosen in itertools.combinations(range(system.shape[0]), n):
        if not set(forced) <= set(chosen):
            continue
        sub = system[list(chosen)]
        if abs(np.linalg.det(sub)) < 1e-9:
            continue
        point = np.linalg.solve(sub, bound[list(chosen)])
        slack = bound - system @ point
        if np.any(slack < -tol * (1.0 + np.abs(bound))):
            continue
        if any(abs(slack[i]) > tol * (1.0 + abs(bound[i])) for i in forced):
            continue
        value = float(cost @ point)
        if best is None or value < best:
            best = value
    return best


__all__ = ["LatticeResult", "lattice_solve", "oracle_solve", "vertex_enumeration"]
