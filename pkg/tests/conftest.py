import json
import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

GOLDEN_DIR = Path(__file__).resolve().parent / "golden"
BUNDLED_INSTANCE = ROOT / "data" / "earthquake_7node.json"


class Golden:
    """Compares values against frozen files under tests/golden.

    A missing file is a failure; RELIEF_UPDATE_GOLDEN=1 rewrites the files instead.
    """

    def __init__(self, directory: Path, update: bool) -> None:
        self.directory = directory
        self.update = update

    def check(self, name: str, value, *, rel: float = 1e-6, abs_tol: float = 1e-6) -> None:
        path = self.directory / f"{name}.json"
        if self.update:
            self.directory.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(value, indent=2, sort_keys=True) + "\n", encoding="utf-8")
            return
        if not path.exists():
            pytest.fail(f"golden {name} is missing; record it with RELIEF_UPDATE_GOLDEN=1")
        expected = json.loads(path.read_text(encoding="utf-8"))
        assert value == pytest.approx(expected, rel=rel, abs=abs_tol), f"golden {name} drifted"


@pytest.fixture
def golden() -> Golden:
    return Golden(GOLDEN_DIR, update=os.getenv("RELIEF_UPDATE_GOLDEN") == "1")


@pytest.fixture(scope="session")
def bundled_path() -> Path:
    return BUNDLED_INSTANCE


@pytest.fixture(scope="session")
def bundled_instance():
    from relief_planner.instance import load_instance

    return load_instance(BUNDLED_INSTANCE)
