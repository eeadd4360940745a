import hashlib
import json
import logging

from relief_planner import __version__
from relief_planner.checker import Solution
from relief_planner.experiments import RunManifest, digest_file
from relief_planner.state import InMemoryResultStore, JSONResultStore
from relief_planner.utils import setup_logging


def test_json_store_round_trip(tmp_path):
    store = JSONResultStore(tmp_path / "runs")
    path = store.save("fgp/result", {"b": 2, "a": [1.5, None]})
    assert path == tmp_path / "runs" / "fgp_result.json"
    assert path.read_text(encoding="utf-8").startswith('{\n  "a"')
    assert store.load("fgp/result") == {"a": [1.5, None], "b": 2}
    assert store.load("absent") is None


def test_json_store_keeps_solutions(tmp_path):
    store = JSONResultStore(tmp_path)
    sol = Solution()
    sol.set("Z", ("n2", "n1", "mixed", 1), 1.0)
    sol.objectives = {3: 4.0}
    store.save_solution("solution", sol)
    loaded = store.load_solution("solution")
    assert loaded.values == sol.values
    assert loaded.objectives == {3: 4.0}
    assert store.load_solution("other") is None


def test_in_memory_store_copies_payloads():
    store = InMemoryResultStore()
    payload = {"rows": [1, 2]}
    store.save("sweep", payload)
    payload["rows"].append(3)
    assert store.load("sweep") == {"rows": [1, 2]}
    assert store.load("missing") is None


def test_manifest_round_trip(tmp_path):
    source = tmp_path / "instance.json"
    source.write_text('{"periods": 1}', encoding="utf-8")
    digest = digest_file(source)
    assert digest == hashlib.sha256(b'{"periods": 1}').hexdigest()

    manifest = RunManifest(command="sweep", instance_digest=digest, flags={"grid": 5}, wall_time=1.25,
                           outcome={"rows": 21})
    assert manifest.version == __version__
    restored = RunManifest.from_dict(json.loads(manifest.to_json()))
    assert restored == manifest


def test_verbose_logging_is_scoped_to_the_package():
    package = setup_logging(verbose=True)
    try:
        assert package.name == "relief_planner"
        assert logging.getLogger("relief_planner.solver.simplex").isEnabledFor(logging.DEBUG)
        assert not logging.getLogger("scipy").isEnabledFor(logging.DEBUG)
    finally:
        setup_logging(verbose=False)
    assert not logging.getLogger("relief_planner.solver.simplex").isEnabledFor(logging.DEBUG)
