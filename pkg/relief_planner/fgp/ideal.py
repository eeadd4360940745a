"""Positive and negative ideal solutions of the single-objective problems."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..checker.solution import Solution
from ..errors import SolverError
from ..instance import Instance
from ..model import assemble, decode_solution
from ..solver import build_backend
from .config import FgpConfig

logger = logging.getLogger(__name__)


@dataclass
class IdealPoint:
    objectives: List[int]
    pis: List[float]
    solutions: List[Solution] = field(default_factory=list)
    matrix: List[List[float]] = field(default_factory=list)

    @property
    def nis(self) -> List[float]:
        return compute_nis(self.matrix)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "objectives": list(self.objectives),
            "pis": list(self.pis),
            "nis": self.nis,
            "matrix": [list(row) for row in self.matrix],
        }


def solve_single(inst: Instance, which: int, config: Optional[FgpConfig] = None) -> Solution:
    """Optimal solution of ``inst`` under objective ``which`` alone."""

    cfg = config or FgpConfig()
    lp, vix = assemble(inst, which, strict_eq5=cfg.strict_eq5)
    backend = build_backend(cfg.backend, lp=lp)
    outcome = backend.solve(lp)
    if not outcome.ok or outcome.values is None:
        raise SolverError(
            f"objective {which} solve ended with status {outcome.status}",
            status=outcome.status,
            diagnostics={"objective": which, "nodes": outcome.nodes, "backend": outcome.backend},
        )
    logger.info("Objective %d optimum %.6g (%s, %d nodes)", which, outcome.objective, outcome.backend, outcome.nodes)
    return decode_solution(inst, vix, outcome.values, status=outcome.status)


def compute_pis(inst: Instance, config: Optional[FgpConfig] = None) -> IdealPoint:
    """Solve each configured objective alone and tabulate every objective at every optimum."""

    cfg = config or FgpConfig()
    objectives = list(cfg.objectives)
    if cfg.jobs > 1 and len(objectives) > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            solutions = list(pool.map(lambda which: solve_single(inst, which, cfg), objectives))
    else:
        solutions = [solve_single(inst, which, cfg) for which in objectives]
    pis = [solutions[j].objectives[which] for j, which in enumerate(objectives)]
    matrix = [[solutions[j].objectives[i] for j in range(len(objectives))] for i in objectives]
    logger.info("PIS %s", pis)
    return IdealPoint(objectives=objectives, pis=pis, solutions=solutions, matrix=matrix)


def compute_nis(objective_matrix: Sequence[Sequence[float]]) -> List[float]:
    """Row-wise maximum over the off-diagonal entries: ``matrix[i][j] = obj_i(x_j)``."""

    k = len(objective_matrix)
    if k < 2:
        raise ValueError("NIS undefined for k=1")
    return [max(objective_matrix[i][j] for j in range(k) if j != i) for i in range(k)]


__all__ = ["IdealPoint", "solve_single", "compute_pis", "compute_nis"]
