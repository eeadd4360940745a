"""Sparse linear program container and the variable coordinate registry."""
from __future__ import annotations

import copy
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Set, Tuple

import numpy as np
from scipy.sparse import csr_matrix

from ..errors import ModelSizeError

CONTINUOUS = "continuous"
INTEGER = "integer"
BINARY = "binary"

LE = "<="
EQ = "="
GE = ">="
SENSES = (LE, EQ, GE)

Coordinate = Tuple[Any, ...]


@dataclass(frozen=True)
class Row:
    """One linear constraint with its traceability tag (equation family + index tuple)."""

    coefficients: Tuple[Tuple[int, float], ...]
    sense: str
    rhs: float
    family: int
    index: Tuple[Any, ...] = ()

    @property
    def tag(self) -> str:
        return f"eq{self.family}[{', '.join(str(part) for part in self.index)}]"

    def activity(self, values: np.ndarray) -> float:
        return float(sum(coef * values[col] for col, coef in self.coefficients))

    def slack(self, values: np.ndarray) -> float:
        """Signed slack; negative means violated (for equalities, minus the absolute residual)."""

        activity = self.activity(values)
        if self.sense == LE:
            return self.rhs - activity
        if self.sense == GE:
            return activity - self.rhs
        return -abs(activity - self.rhs)


class VariableIndex:
    """Bijection between semantic coordinates and LP column numbers."""

    def __init__(self) -> None:
        self._columns: Dict[Coordinate, int] = {}
        self._coordinates: List[Coordinate] = []

    def register(self, coordinate: Coordinate) -> int:
        if coordinate in self._columns:
            raise KeyError(f"coordinate already registered: {coordinate}")
        column = len(self._coordinates)
        self._columns[coordinate] = column
        self._coordinates.append(coordinate)
        return column

    def column(self, coordinate: Coordinate) -> int:
        return self._columns[coordinate]

    def get(self, coordinate: Coordinate) -> Optional[int]:
        return self._columns.get(coordinate)

    def coordinate(self, column: int) -> Coordinate:
        return self._coordinates[column]

    def family(self, name: str) -> List[Tuple[Coordinate, int]]:
        return [(coord, col) for col, coord in enumerate(self._coordinates) if coord[0] == name]

    def families(self) -> List[str]:
        seen: List[str] = []
        for coord in self._coordinates:
            if coord[0] not in seen:
                seen.append(coord[0])
        return seen

    def copy(self) -> "VariableIndex":
        clone = VariableIndex()
        clone._columns = dict(self._columns)
        clone._coordinates = list(self._coordinates)
        return clone

    def __len__(self) -> int:
        return len(self._coordinates)

    def __contains__(self, coordinate: object) -> bool:
        return coordinate in self._columns

    def __iter__(self) -> Iterator[Tuple[Coordinate, int]]:
        return ((coord, col) for col, coord in enumerate(self._coordinates))


class LinearProgram:
    """Minimization model: bounded columns, sparse rows, one linear objective plus offset."""

    def __init__(self, name: str = "model", *, max_nonzeros: Optional[int] = None) -> None:
        self.name = name
        self.max_nonzeros = max_nonzeros
        self.names: List[str] = []
        self.lower: List[float] = []
        self.upper: List[float] = []
        self.kinds: List[str] = []
        self.rows: List[Row] = []
        self.objective: List[float] = []
        self.objective_offset = 0.0
        self.structural_families: Set[int] = set()
        self._nonzeros = 0

    # -- building -----------------------------------------------------------------
    def add_column(
        self, name: str, *, lower: float = 0.0, upper: float = math.inf, kind: str = CONTINUOUS
    ) -> int:
        if kind == BINARY:
            lower, upper = max(lower, 0.0), min(upper, 1.0)
        self.names.append(name)
        self.lower.append(float(lower))
        self.upper.append(float(upper))
        self.kinds.append(kind)
        self.objective.append(0.0)
        return len(self.names) - 1

    def add_row(
        self,
        coefficients: Dict[int, float],
        sense: str,
        rhs: float,
        *,
        family: int,
        index: Tuple[Any, ...] = (),
    ) -> Optional[Row]:
        """Append a row; rows without nonzeros that are trivially satisfied are skipped."""

        if sense not in SENSES:
            raise ValueError(f"unknown row sense {sense!r}")
        terms = tuple(sorted((col, float(coef)) for col, coef in coefficients.items() if coef != 0.0))
        if not terms and _trivially_satisfied(sense, rhs):
            return None
        row = Row(coefficients=terms, sense=sense, rhs=float(rhs), family=family, index=tuple(index))
        self._nonzeros += len(terms)
        if self.max_nonzeros is not None and self._nonzeros > self.max_nonzeros:
            raise ModelSizeError(
                f"model exceeds {self.max_nonzeros} nonzeros while emitting equation family {family}"
            )
        self.rows.append(row)
        return row

    def add_rows(self, rows: Iterable[Row]) -> None:
        for row in rows:
            self.add_row(dict(row.coefficients), row.sense, row.rhs, family=row.family, index=row.index)

    def set_objective(self, coefficients: Dict[int, float], offset: float = 0.0) -> None:
        self.objective = [0.0] * self.num_columns
        for col, coef in coefficients.items():
            self.objective[col] = float(coef)
        self.objective_offset = float(offset)

    def mark_structural(self, *families: int) -> None:
        """Record equation families realized by column/arc pruning instead of rows."""

        self.structural_families.update(families)

    def copy(self) -> "LinearProgram":
        return copy.deepcopy(self)

    # -- inspection ---------------------------------------------------------------
    @property
    def num_columns(self) -> int:
        return len(self.names)

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    @property
    def nonzeros(self) -> int:
        return self._nonzeros

    def integer_columns(self) -> List[int]:
        return [col for col, kind in enumerate(self.kinds) if kind in (INTEGER, BINARY)]

    def families(self) -> Set[int]:
        return {row.family for row in self.rows} | set(self.structural_families)

    def rows_of(self, family: int) -> List[Row]:
        return [row for row in self.rows if row.family == family]

    def objective_vector(self) -> np.ndarray:
        return np.asarray(self.objective, dtype=float)

    def objective_value(self, values: np.ndarray) -> float:
        return float(np.dot(self.objective_vector(), values) + self.objective_offset)

    def dense(self) -> Tuple[np.ndarray, List[str], np.ndarray]:
        """Dense (A, senses, b)."""

        matrix = np.zeros((self.num_rows, self.num_columns))
        for i, row in enumerate(self.rows):
            for col, coef in row.coefficients:
                matrix[i, col] += coef
        return matrix, [row.sense for row in self.rows], np.asarray([row.rhs for row in self.rows], dtype=float)

    def sparse(self) -> csr_matrix:
        data: List[float] = []
        indices: List[int] = []
        indptr = [0]
        for row in self.rows:
            for col, coef in row.coefficients:
                indices.append(col)
                data.append(coef)
            indptr.append(len(indices))
        return csr_matrix((data, indices, indptr), shape=(self.num_rows, self.num_columns))

    def max_violation(self, values: np.ndarray) -> float:
        worst = 0.0
        for row in self.rows:
            worst = max(worst, -row.slack(values))
        lower = np.asarray(self.lower)
        upper = np.asarray(self.upper)
        worst = max(worst, float(np.max(lower - values, initial=0.0)), float(np.max(values - upper, initial=0.0)))
        return worst


def _trivially_satisfied(sense: str, rhs: float) -> bool:
    if sense == LE:
        return rhs >= 0.0
    if sense == GE:
        return rhs <= 0.0
    return rhs == 0.0


__all__ = [
    "CONTINUOUS",
    "INTEGER",
    "BINARY",
    "LE",
    "EQ",
    "GE",
    "Coordinate",
    "Row",
    "VariableIndex",
    "LinearProgram",
]
