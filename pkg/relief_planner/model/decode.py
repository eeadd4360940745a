"""Column vector -> named :class:`Solution`."""
from __future__ import annotations

from typing import Sequence

from ..checker.solution import Solution
from ..instance import Instance
from .objectives import build_objectives
from .program import VariableIndex

ZERO_TOLERANCE = 1e-9


def decode_solution(
    inst: Instance,
    vix: VariableIndex,
    values: Sequence[float],
    *,
    status: str = "optimal",
) -> Solution:
    """Map column values back to coordinates and evaluate all four objectives."""

    solution = Solution(status=status)
    for coordinate, column in vix:
        value = float(values[column])
        if abs(value) <= ZERO_TOLERANCE:
            continue
        solution.set(coordinate[0], coordinate[1:], value)
    solution.objectives = {
        which: vector.value(values) for which, vector in build_objectives(inst, vix).items()
    }
    return solution


def encode_solution(vix: VariableIndex, solution: Solution) -> list:
    """Inverse of :func:`decode_solution` for the columns of ``vix``."""

    return [solution.get(coordinate[0], *coordinate[1:]) for coordinate, _ in vix]


__all__ = ["decode_solution", "encode_solution"]
