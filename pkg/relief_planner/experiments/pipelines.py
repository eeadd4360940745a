"""End-to-end run orchestration shared by the CLI commands."""
from __future__ import annotations

import logging
import time
from typing import Any, Dict, Optional, Sequence

from ..analysis import SweepConfig, effectiveness_curve, gamma_sweep, weight_sweep
from ..checker import check
from ..fgp import FgpConfig, compute_pis, solve_master, validate_weights
from ..instance import Instance

logger = logging.getLogger(__name__)


def run_solve_pipeline(
    inst: Instance,
    weights: Sequence[float],
    *,
    config: Optional[FgpConfig] = None,
) -> Dict[str, Any]:
    """PIS/NIS, weighted master, then the independent checker."""

    cfg = config or FgpConfig()
    start = time.perf_counter()
    validate_weights(weights, len(cfg.objectives))
    ideal = compute_pis(inst, cfg)
    result = solve_master(inst, weights, ideal=ideal, config=cfg)
    report = check(inst, result.solution, strict_eq5=cfg.strict_eq5)
    if not report.passed:
        logger.warning("Checker rejected the master solution: %d violations", len(report.violations))
    return {
        "ideal": ideal,
        "result": result,
        "report": report,
        "latency_seconds": time.perf_counter() - start,
    }


def run_pis_nis_pipeline(inst: Instance, *, config: Optional[FgpConfig] = None) -> Dict[str, Any]:
    start = time.perf_counter()
    cfg = config or FgpConfig()
    ideal = compute_pis(inst, cfg)
    reports = [check(inst, solution, strict_eq5=cfg.strict_eq5) for solution in ideal.solutions]
    return {
        "ideal": ideal,
        "nis": ideal.nis,
        "checker_passed": all(report.passed for report in reports),
        "latency_seconds": time.perf_counter() - start,
    }


def run_sweep_pipeline(inst: Instance, grid_n: int, *, config: Optional[SweepConfig] = None) -> Dict[str, Any]:
    start = time.perf_counter()
    table = weight_sweep(inst, grid_n, config=config)
    curve = effectiveness_curve(table) if len(table) else None
    return {
        "table": table,
        "curve": curve,
        "checker_passed": bool(table.frame["checker_passed"].eq(True).all()),
        "latency_seconds": time.perf_counter() - start,
    }


def run_robustness_pipeline(
    inst: Instance,
    which: int,
    scales: Sequence[float],
    *,
    config: Optional[FgpConfig] = None,
) -> Dict[str, Any]:
    start = time.perf_counter()
    frame = gamma_sweep(inst, which, scales, config=config)
    return {"table": frame, "latency_seconds": time.perf_counter() - start}


__all__ = ["run_solve_pipeline", "run_pis_nis_pipeline", "run_sweep_pipeline", "run_robustness_pipeline"]
