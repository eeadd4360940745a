"""Weighted achievement master problem over the shared constraint set."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from ..checker.solution import Solution
from ..errors import SolverError
from ..instance import Instance
from ..model import build_objective, build_structure, decode_solution
from ..model.program import LE
from ..solver import build_backend
from .config import FgpConfig
from .ideal import IdealPoint, compute_pis
from .membership import is_degenerate, membership, validate_weights

logger = logging.getLogger(__name__)

MASTER_FAMILY = 30


@dataclass
class FgpResult:
    objectives: List[int]
    pis: List[float]
    nis: List[float]
    weights: List[float]
    lambdas: List[float]
    membership: List[float]
    solution: Solution
    master_objective: float
    status: str = "optimal"
    backend: str = ""
    extras: Dict[str, Any] = field(default_factory=dict)

    def objective_values(self) -> List[float]:
        return [self.solution.objectives[which] for which in self.objectives]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "backend": self.backend,
            "objectives": list(self.objectives),
            "weights": list(self.weights),
            "pis": list(self.pis),
            "nis": list(self.nis),
            "lambda": list(self.lambdas),
            "membership": list(self.membership),
            "objective_values": self.objective_values(),
            "master_objective": self.master_objective,
        }


def solve_master(
    inst: Instance,
    weights: Sequence[float],
    *,
    ideal: Optional[IdealPoint] = None,
    config: Optional[FgpConfig] = None,
) -> FgpResult:
    """Maximize the weighted achievement levels subject to the model and λᵢ ≤ μᵢ(x)."""

    cfg = config or FgpConfig()
    objectives = list(cfg.objectives)
    w = validate_weights(weights, len(objectives))
    ideal = ideal or compute_pis(inst, cfg)
    if list(ideal.objectives) != objectives:
        raise ValueError(f"ideal point covers objectives {ideal.objectives}, expected {objectives}")
    pis, nis = list(ideal.pis), ideal.nis

    lp, vix = build_structure(inst, strict_eq5=cfg.strict_eq5)
    lambda_columns: List[int] = []
    for position, which in enumerate(objectives):
        vector = build_objective(inst, vix, which)
        if is_degenerate(pis[position], nis[position]):
            # Indifferent objective: pinned at its common ideal value, achievement fixed at 1.
            column = lp.add_column(f"lambda_{which}", lower=1.0, upper=1.0)
            coefficients = dict(vector.coefficients)
        else:
            column = lp.add_column(f"lambda_{which}", lower=0.0, upper=1.0)
            coefficients = dict(vector.coefficients)
            coefficients[column] = nis[position] - pis[position]
        lp.add_row(coefficients, LE, nis[position] - vector.offset, family=MASTER_FAMILY, index=(which,))
        lambda_columns.append(column)
    lp.set_objective({col: -weight for col, weight in zip(lambda_columns, w) if weight})
    lp.name = "relief_fgp_master"

    backend = build_backend(cfg.backend, lp=lp)
    outcome = backend.solve(lp)
    if not outcome.ok or outcome.values is None:
        raise SolverError(
            f"master problem ended with status {outcome.status}",
            status=outcome.status,
            diagnostics={"weights": w, "nodes": outcome.nodes, "backend": outcome.backend},
        )
    values = outcome.values
    solution = decode_solution(inst, vix, values[: len(vix)], status=outcome.status)
    lambdas = [min(1.0, max(0.0, float(values[col]))) for col in lambda_columns]
    mu = [membership(solution.objectives[which], pis[i], nis[i]) for i, which in enumerate(objectives)]
    master_objective = float(sum(weight * level for weight, level in zip(w, lambdas)))
    logger.info("Master solved: weights=%s lambda=%s value=%.6g", w, lambdas, master_objective)
    return FgpResult(
        objectives=objectives,
        pis=pis,
        nis=nis,
        weights=w,
        lambdas=lambdas,
        membership=mu,
        solution=solution,
        master_objective=master_objective,
        status=outcome.status,
        backend=outcome.backend,
    )


__all__ = ["MASTER_FAMILY", "FgpResult", "solve_master"]
