"""Small numeric and timing helpers."""
from __future__ import annotations

import statistics
import time
from typing import Iterable


def sample_variance(values: Iterable[float]) -> float:
    """Return the sample variance, 0.0 for fewer than two values."""

    data = [float(value) for value in values]
    if len(data) < 2:
        return 0.0
    return statistics.variance(data)


def close_to_integer(value: float, tol: float = 1e-6) -> bool:
    return abs(value - round(value)) <= tol


class Stopwatch:
    """Context manager measuring wall time with ``time.perf_counter``."""

    def __init__(self) -> None:
        self.start = 0.0
        self.elapsed = 0.0

    def __enter__(self) -> "Stopwatch":
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc: object) -> None:
        self.elapsed = time.perf_counter() - self.start


__all__ = ["sample_variance", "close_to_integer", "Stopwatch"]
