"""Persistence for run artifacts: solutions, FGP results and manifests."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Optional, Protocol

from ..checker.solution import Solution


class BaseResultStore(Protocol):
    """Simple protocol for saving and loading named JSON artifacts."""

    def load(self, name: str) -> Optional[Dict[str, Any]]:
        """Return the stored document if available."""

    def save(self, name: str, payload: Dict[str, Any]) -> Path:
        """Persist ``payload`` under ``name``."""


class InMemoryResultStore:
    """Volatile store, primarily for tests."""

    def __init__(self) -> None:
        self._documents: Dict[str, Dict[str, Any]] = {}

    def load(self, name: str) -> Optional[Dict[str, Any]]:
        document = self._documents.get(name)
        return json.loads(json.dumps(document)) if document is not None else None

    def save(self, name: str, payload: Dict[str, Any]) -> Path:
        self._documents[name] = json.loads(json.dumps(payload))
        return Path(f"{name}.json")


class JSONResultStore:
    """Directory of ``<name>.json`` files written with sorted keys."""

    def __init__(self, root_dir: Path) -> None:
        self._root = root_dir
        self._root.mkdir(parents=True, exist_ok=True)

    @property
    def root(self) -> Path:
        return self._root

    def path_for(self, name: str) -> Path:
        safe_name = name.replace("/", "_")
        return self._root / f"{safe_name}.json"

    def load(self, name: str) -> Optional[Dict[str, Any]]:
        path = self.path_for(name)
        if not path.exists():
            return None
        with path.open("r", encoding="utf-8") as f:
            return json.load(f)

    def save(self, name: str, payload: Dict[str, Any]) -> Path:
        path = self.path_for(name)
        with path.open("w", encoding="utf-8") as f:
            json.dump(payload, f, indent=2, sort_keys=True)
            f.write("\n")
        return path

    def save_solution(self, name: str, solution: Solution) -> Path:
        return self.save(name, solution.to_dict())

    def load_solution(self, name: str) -> Optional[Solution]:
        data = self.load(name)
        return Solution.from_dict(data) if data is not None else None


__all__ = ["BaseResultStore", "InMemoryResultStore", "JSONResultStore"]
