"""Weight-grid sensitivity sweeps over the goal-programming master."""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from ..checker import check
from ..errors import ReliefPlannerError
from ..fgp import FgpConfig, IdealPoint, compute_pis, solve_master
from ..instance import Instance
from ..utils.metrics import Stopwatch, sample_variance
from .export import write_csv, write_json

logger = logging.getLogger(__name__)

VOLATILE_COLUMNS = ("wall_time",)


@dataclass
class SweepConfig:
    fgp: FgpConfig = field(default_factory=FgpConfig)
    full_simplex: bool = False
    jobs: int = 1
    run_checker: bool = True


def simplex_grid(grid_n: int, k: int, *, full: bool = False) -> List[Tuple[float, ...]]:
    """Weight vectors on a grid of step 1/grid_n.

    The default grid varies the first two weights, gives the remainder to the third and
    zero to the rest; ``full`` enumerates every composition of grid_n into k parts.
    """

    if grid_n < 2:
        raise ValueError(f"grid_n must be >= 2, got {grid_n}")
    if full or k < 3:
        points = []
        for parts in itertools.product(range(grid_n + 1), repeat=k - 1):
            if sum(parts) <= grid_n:
                points.append(tuple(p / grid_n for p in parts) + ((grid_n - sum(parts)) / grid_n,))
        return points
    points = []
    for i in range(grid_n + 1):
        for j in range(grid_n + 1 - i):
            rest = (grid_n - i - j) / grid_n
            points.append((i / grid_n, j / grid_n, rest) + (0.0,) * (k - 3))
    return points


@dataclass
class SweepTable:
    frame: pd.DataFrame

    def __len__(self) -> int:
        return len(self.frame)

    @property
    def data(self) -> pd.DataFrame:
        """The table without wall-clock columns."""

        return self.frame.drop(columns=[c for c in VOLATILE_COLUMNS if c in self.frame.columns])

    def variance(self, column: str) -> float:
        return sample_variance(self.frame[column].dropna().tolist())

    def to_csv(self, path: Path) -> None:
        write_csv(self.data, path)

    def to_json(self, path: Path) -> None:
        write_json(self.data, path)


def _sweep_point(
    inst: Instance, weights: Tuple[float, ...], ideal: IdealPoint, config: SweepConfig
) -> Dict[str, Any]:
    objectives = list(config.fgp.objectives)
    row: Dict[str, Any] = {f"w{which}": weight for which, weight in zip(objectives, weights)}
    with Stopwatch() as watch:
        try:
            result = solve_master(inst, weights, ideal=ideal, config=config.fgp)
        except ReliefPlannerError as exc:
            logger.warning("Sweep point %s failed: %s", weights, exc)
            row.update({f"obj{i}": math.nan for i in objectives})
            row.update({f"lambda{i}": math.nan for i in objectives})
            row.update({"master_objective": math.nan, "status": f"error: {exc}", "checker_passed": False})
            result = None
    if result is not None:
        row.update({f"obj{i}": value for i, value in zip(objectives, result.objective_values())})
        row.update({f"lambda{i}": value for i, value in zip(objectives, result.lambdas)})
        row["master_objective"] = result.master_objective
        row["status"] = result.status
        row["checker_passed"] = (
            check(inst, result.solution, strict_eq5=config.fgp.strict_eq5).passed if config.run_checker else None
        )
    row["wall_time"] = watch.elapsed
    return row


def weight_sweep(
    inst: Instance,
    grid_n: int,
    *,
    config: Optional[SweepConfig] = None,
    ideal: Optional[IdealPoint] = None,
) -> SweepTable:
    """Solve the master at every grid point; failures are recorded in their row."""

    cfg = config or SweepConfig()
    objectives = list(cfg.fgp.objectives)
    grid = simplex_grid(grid_n, len(objectives), full=cfg.full_simplex)
    ideal = ideal or compute_pis(inst, cfg.fgp)
    logger.info("Sweeping %d weight vectors (jobs=%d)", len(grid), cfg.jobs)

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(lambda weights: _sweep_point(inst, weights, ideal, cfg), grid))
    else:
        rows = [_sweep_point(inst, weights, ideal, cfg) for weights in grid]

    columns = (
        [f"w{i}" for i in objectives]
        + [f"obj{i}" for i in objectives]
        + [f"lambda{i}" for i in objectives]
        + ["master_objective", "status", "checker_passed", "wall_time"]
    )
    return SweepTable(frame=pd.DataFrame(rows, columns=columns))


__all__ = ["SweepConfig", "SweepTable", "simplex_grid", "weight_sweep"]
