"""Price of robustness: single-objective optima over scaled uncertainty budgets."""
from __future__ import annotations

import logging
import math
from typing import Dict, List, Optional, Sequence

import pandas as pd

from ..errors import ReliefPlannerError
from ..fgp import FgpConfig, solve_single
from ..instance import Instance

logger = logging.getLogger(__name__)

DEFAULT_SCALES = (0.0, 0.25, 0.5, 0.75, 1.0)


def gamma_sweep(
    inst: Instance,
    which: int,
    scales: Sequence[float] = DEFAULT_SCALES,
    *,
    config: Optional[FgpConfig] = None,
) -> pd.DataFrame:
    rows: List[Dict[str, object]] = []
    for scale in scales:
        if not 0.0 <= scale <= 1.0:
            raise ValueError(f"gamma scale must lie in [0, 1], got {scale}")
        try:
            solution = solve_single(inst.with_gamma_scale(scale), which, config)
        except ReliefPlannerError as exc:
            logger.warning("Gamma scale %s failed: %s", scale, exc)
            rows.append({"gamma_scale": scale, "objective": math.nan, "status": f"error: {exc}"})
            continue
        rows.append({"gamma_scale": scale, "objective": solution.objectives[which], "status": solution.status})
    return pd.DataFrame(rows, columns=["gamma_scale", "objective", "status"])


__all__ = ["DEFAULT_SCALES", "gamma_sweep"]
