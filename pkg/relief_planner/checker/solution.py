"""Named solution values keyed by variable family and index tuple."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Tuple

FAMILIES = (
    "dev_injury",
    "dev_commodity",
    "dew",
    "Z",
    "U",
    "W",
    "sur",
    "u",
    "delta",
    "eta_commodity",
    "theta_commodity",
    "eta_injury",
    "theta_injury",
)

Index = Tuple[Any, ...]


@dataclass
class Solution:
    """Sparse assignment: absent entries are zero."""

    values: Dict[str, Dict[Index, float]] = field(default_factory=dict)
    objectives: Dict[int, float] = field(default_factory=dict)
    status: str = "optimal"

    def get(self, family: str, *index: Any) -> float:
        return self.values.get(family, {}).get(tuple(index), 0.0)

    def set(self, family: str, index: Index, value: float) -> None:
        self.values.setdefault(family, {})[tuple(index)] = float(value)

    def entries(self, family: str) -> List[Tuple[Index, float]]:
        return sorted(self.values.get(family, {}).items(), key=lambda item: tuple(str(part) for part in item[0]))

    def total(self, family: str) -> float:
        return float(sum(self.values.get(family, {}).values()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "objectives": {str(key): value for key, value in sorted(self.objectives.items())},
            "families": {
                family: [[*index, value] for index, value in self.entries(family)]
                for family in sorted(self.values)
                if self.values[family]
            },
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Solution":
        values: Dict[str, Dict[Index, float]] = {}
        for family, rows in (data.get("families") or {}).items():
            values[family] = {tuple(row[:-1]): float(row[-1]) for row in rows}
        objectives = {int(key): float(value) for key, value in (data.get("objectives") or {}).items()}
        return cls(values=values, objectives=objectives, status=str(data.get("status", "optimal")))

    def save(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True), encoding="utf-8")

    @classmethod
    def load(cls, path: Path) -> "Solution":
        return cls.from_dict(json.loads(path.read_text(encoding="utf-8")))


__all__ = ["FAMILIES", "Index", "Solution"]
