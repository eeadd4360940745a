"""Cost versus service-level frontier from a weight sweep."""
from __future__ import annotations

import pandas as pd

from .sweep import SweepTable


def effectiveness_curve(sweep: SweepTable) -> pd.DataFrame:
    """(cost, unmet) points sorted by cost, one per cost, unmet non-increasing."""

    frame = sweep.frame
    if frame.empty:
        raise ValueError("effectiveness curve needs a non-empty sweep")
    points = pd.DataFrame(
        {"cost": frame["obj3"], "unmet": frame["obj1"] + frame["obj2"]}
    ).dropna()
    points = points.groupby("cost", as_index=False, sort=True)["unmet"].min()

    kept = []
    best = None
    for cost, unmet in zip(points["cost"], points["unmet"]):
        if best is None or unmet < best:
            kept.append((float(cost), float(unmet)))
            best = unmet
    return pd.DataFrame(kept, columns=["cost", "unmet"])


__all__ = ["effectiveness_curve"]
