"""Linear membership of an objective value between its ideal and anti-ideal."""
from __future__ import annotations

from typing import List, Sequence

from ..errors import WeightError

DEGENERACY_TOLERANCE = 1e-9
WEIGHT_TOLERANCE = 1e-9


def membership(obj_value: float, pis: float, nis: float) -> float:
    """1 at the positive ideal, 0 at the negative ideal, clamped to [0, 1]."""

    spread = nis - pis
    if spread <= DEGENERACY_TOLERANCE * (1.0 + abs(nis)):
        return 1.0
    return min(1.0, max(0.0, (nis - obj_value) / spread))


def is_degenerate(pis: float, nis: float) -> bool:
    return nis - pis <= DEGENERACY_TOLERANCE * (1.0 + abs(nis))


def validate_weights(weights: Sequence[float], count: int) -> List[float]:
    values = [float(w) for w in weights]
    out_of_range = any(w < -WEIGHT_TOLERANCE or w > 1.0 + WEIGHT_TOLERANCE for w in values)
    if out_of_range or abs(sum(values) - 1.0) > WEIGHT_TOLERANCE * max(1, len(values)):
        raise WeightError(f"weights exceed simplex: {values} must lie in [0, 1] and sum to 1")
    if len(values) != count:
        raise WeightError(f"expected {count} weights, got {len(values)}")
    return [min(1.0, max(0.0, w)) for w in values]


__all__ = ["DEGENERACY_TOLERANCE", "membership", "is_degenerate", "validate_weights"]
