import ast
import json
from pathlib import Path

import pytest

from relief_planner.checker import (
    Solution,
    check,
    evaluate_objectives,
    served_to_date,
    worst_case_deviation,
    worst_case_shortfall,
)
from relief_planner.errors import DimensionError, SizeGuardError
from relief_planner.instance import parse_instance

ROOT = Path(__file__).resolve().parents[1]


def _delivery_instance():
    """One van, one depot, one demand node with 4 units due in period 2."""

    doc = {
        "periods": 2,
        "commodities": [{"id": "A1", "weight": 1, "volume": 1, "priority": 1}],
        "vehicles": [
            {"id": "van", "load_capacity": 10, "volume_capacity": 5, "operating_cost": 3, "commodities": ["A1"]}
        ],
        "nodes": [
            {"id": "d", "roles": ["demand"], "commodity_demand": [{"commodity": "A1", "period": 2, "amount": 4}]},
            {"id": "s", "roles": ["supply"], "commodity_supply": [{"commodity": "A1", "amount": 6}],
             "vehicle_availability": [{"vehicle": "van", "period": 1, "count": 1}]},
        ],
        "travel_time": [
            {"from": "s", "to": "d", "vehicle": "van", "periods": 1},
            {"from": "d", "to": "s", "vehicle": "van", "periods": 1},
        ],
    }
    return parse_instance(json.dumps(doc))


def _delivery_plan(load=4.0):
    sol = Solution()
    sol.set("Z", ("s", "d", "van", 1), 1.0)
    sol.set("U", ("A1", "s", "s", "d", "van", 1), load)
    # the van idles at d once it has arrived
    sol.set("sur", ("d", "van", 2), 1.0)
    return sol


def test_feasible_plan_passes():
    inst = _delivery_instance()
    report = check(inst, _delivery_plan())
    assert report.passed
    assert report.rows_checked > 0
    assert report.objectives == {1: 0.0, 2: 0.0, 3: 3.0, 4: 0.0}
    assert report.to_frame().empty


def test_single_volume_fault_is_reported_alone():
    inst = _delivery_instance()
    report = check(inst, _delivery_plan(load=6.0))
    assert not report.passed
    assert report.families() == ["eq17"]
    violation = report.violations[0]
    assert violation.index == ("s", "d", "van", 1)
    assert violation.slack == pytest.approx(-1.0)
    frame = report.to_frame()
    assert list(frame["family"]) == ["eq17"]


def test_self_loop_trip_is_outside_the_arc_set():
    inst = _delivery_instance()
    sol = _delivery_plan()
    sol.set("Z", ("s", "s", "van", 1), 1.0)
    assert check(inst, sol).families() == ["eq21"]


def test_missing_unmet_demand_breaks_the_balance():
    inst = _delivery_instance()
    sol = _delivery_plan(load=3.0)
    report = check(inst, sol)
    assert report.families() == ["eq12"]
    sol.set("dev_commodity", ("A1", "d", 2), 1.0)
    assert check(inst, sol).passed


def test_fleet_balance_needs_the_idle_vehicle():
    inst = _delivery_instance()
    sol = _delivery_plan()
    sol.values["sur"].clear()
    assert check(inst, sol).families() == ["eq22"]


def test_fractional_trip_fails_integrality():
    inst = _delivery_instance()
    sol = _delivery_plan()
    sol.set("Z", ("s", "d", "van", 1), 0.8)
    sol.set("sur", ("s", "van", 1), 0.2)
    sol.set("sur", ("s", "van", 2), 0.2)
    sol.set("sur", ("d", "van", 2), 0.8)
    assert set(check(inst, sol).families()) == {"integrality"}


def test_claimed_objectives_are_compared():
    inst = _delivery_instance()
    sol = _delivery_plan()
    sol.objectives = {3: 99.0}
    report = check(inst, sol)
    assert not report.violations
    assert report.objective_mismatches == {3: (99.0, 3.0)}
    assert not report.passed
    assert report.to_dict()["objective_mismatches"]["3"] == {"claimed": 99.0, "recomputed": 3.0}


def test_unknown_dimensions_raise():
    inst = _delivery_instance()
    sol = _delivery_plan()
    sol.set("U", ("A1", "s", "s", "x", "van", 1), 1.0)
    with pytest.raises(DimensionError):
        check(inst, sol)
    late = _delivery_plan()
    late.set("Z", ("s", "d", "van", 3), 1.0)
    with pytest.raises(DimensionError):
        check(inst, late)


def test_solution_json_round_trip(tmp_path):
    sol = _delivery_plan()
    sol.objectives = {3: 3.0}
    path = tmp_path / "solution.json"
    sol.save(path)
    loaded = Solution.load(path)
    assert loaded.values == sol.values
    assert loaded.objectives == {3: 3.0}
    document = json.loads(path.read_text(encoding="utf-8"))
    assert document["families"]["U"] == [["A1", "s", "s", "d", "van", 1, 4.0]]


def test_checker_recomputes_rows_without_the_model():
    source = (ROOT / "relief_planner" / "checker" / "feasibility.py").read_text(encoding="utf-8")
    imported = set()
    for node in ast.walk(ast.parse(source)):
        if isinstance(node, ast.ImportFrom):
            imported.add(node.module or "")
        elif isinstance(node, ast.Import):
            imported.update(alias.name for alias in node.names)
    assert not any("model" in name or "solver" in name for name in imported)


def test_worst_case_deviation_fractional_budget(bundled_instance):
    # deviations 4 (period 1) and 5 (period 5) for A2 at node 2
    assert worst_case_deviation(bundled_instance, "commodity", "A2", "2", 5) == pytest.approx(9.0)
    assert worst_case_deviation(bundled_instance.with_gamma_scale(0.5), "commodity", "A2", "2", 5) == pytest.approx(5.0)
    assert worst_case_deviation(bundled_instance.with_gamma_scale(0.75), "commodity", "A2", "2", 5) == pytest.approx(7.0)
    assert worst_case_deviation(bundled_instance.with_gamma_scale(0.375), "commodity", "A2", "2", 5) == pytest.approx(3.75)
    assert worst_case_deviation(bundled_instance.with_gamma_scale(0.0), "commodity", "A2", "2", 5) == 0.0


def test_robustified_demand_anchor(bundled_instance):
    empty = Solution()
    assert worst_case_shortfall(bundled_instance, empty, ("commodity", "A1"), "1", 1) == pytest.approx(33.0, abs=1e-6)
    assert served_to_date(bundled_instance, empty, "commodity", "A1", "1", 1) == 0.0
    with pytest.raises(ValueError):
        worst_case_shortfall(bundled_instance, empty, ("vehicle", "truck"), "1", 1)


def test_worst_case_enumeration_guard():
    periods = 21
    doc = {
        "periods": periods,
        "commodities": [{"id": "A1", "weight": 1, "volume": 1, "priority": 1}],
        "vehicles": [{"id": "van", "load_capacity": 1, "volume_capacity": 1, "commodities": ["A1"]}],
        "nodes": [
            {"id": "d", "roles": ["demand"], "commodity_demand": [
                {"commodity": "A1", "period": t, "amount": 1, "deviation": 1} for t in range(1, periods + 1)
            ]},
        ],
    }
    inst = parse_instance(json.dumps(doc))
    assert worst_case_deviation(inst, "commodity", "A1", "d", 20) == pytest.approx(20.0)
    with pytest.raises(SizeGuardError):
        worst_case_deviation(inst, "commodity", "A1", "d", 21)


def test_evaluate_objectives_counts_construction(bundled_instance):
    sol = Solution()
    sol.set("u", ("6",), 1.0)
    sol.set("dew", ("H1", "1", 2), 10.0)
    values = evaluate_objectives(bundled_instance, sol)
    assert values[3] == pytest.approx(1500.0)
    assert values[4] == pytest.approx(1075.0)
