"""Run manifests: what was run, on which input, with which flags."""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict

from .. import __version__


def digest_file(path: Path) -> str:
    """sha256 of the file's bytes."""

    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    command: str
    instance_digest: str
    flags: Dict[str, Any] = field(default_factory=dict)
    version: str = __version__
    wall_time: float = 0.0
    outcome: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        return cls(
            command=data["command"],
            instance_digest=data["instance_digest"],
            flags=dict(data.get("flags", {})),
            version=data.get("version", __version__),
            wall_time=float(data.get("wall_time", 0.0)),
            outcome=dict(data.get("outcome", {})),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


__all__ = ["RunManifest", "digest_file"]
