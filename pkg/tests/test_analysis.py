import json

import pandas as pd
import pytest

from relief_planner.analysis import (
    ROUTE_COLUMNS,
    SERIES_COLUMNS,
    SweepConfig,
    SweepTable,
    effectiveness_curve,
    route_table,
    series_value,
    shortfall_series,
    simplex_grid,
    weight_sweep,
    write_json,
)
from relief_planner.checker import Solution, check
from relief_planner.fgp import FgpConfig
from relief_planner.instance import random_instance


@pytest.fixture(scope="module")
def bundled_sweep(bundled_instance):
    config = SweepConfig(fgp=FgpConfig(backend="highs"))
    return weight_sweep(bundled_instance, 5, config=config)


def test_default_grid_varies_three_weights():
    grid = simplex_grid(2, 4)
    assert len(grid) == 6
    assert all(sum(point) == pytest.approx(1.0) for point in grid)
    assert all(point[3] == 0.0 for point in grid)
    assert (0.5, 0.5, 0.0, 0.0) in grid
    assert len(simplex_grid(5, 4)) == 21


def test_full_grid_enumerates_compositions():
    grid = simplex_grid(2, 4, full=True)
    assert len(grid) == 10
    assert len(set(grid)) == 10
    assert (0.0, 0.0, 0.0, 1.0) in grid
    with pytest.raises(ValueError):
        simplex_grid(1, 4)


def test_sweep_covers_the_grid(bundled_sweep, golden):
    frame = bundled_sweep.frame
    assert len(bundled_sweep) == 21
    assert set(frame["status"]) == {"optimal"}
    assert frame["checker_passed"].eq(True).all()
    assert "wall_time" not in bundled_sweep.data.columns
    golden.check("sweep_master_objective", [round(v, 6) for v in frame["master_objective"]])


def test_cost_varies_more_than_injury_shortfall(bundled_sweep):
    assert bundled_sweep.variance("obj3") > bundled_sweep.variance("obj1")


def test_sweep_exports(bundled_sweep, tmp_path):
    bundled_sweep.to_csv(tmp_path / "sweep.csv")
    bundled_sweep.to_json(tmp_path / "sweep.json")
    reread = pd.read_csv(tmp_path / "sweep.csv")
    assert list(reread.columns) == list(bundled_sweep.data.columns)
    assert len(reread) == 21
    records = json.loads((tmp_path / "sweep.json").read_text(encoding="utf-8"))
    assert len(records) == 21
    assert records[0]["w1"] == 0.0


def test_effectiveness_curve_is_a_frontier(bundled_sweep):
    curve = effectiveness_curve(bundled_sweep)
    assert list(curve.columns) == ["cost", "unmet"]
    assert len(curve) >= 1
    assert curve["cost"].is_monotonic_increasing
    assert all(later < earlier for earlier, later in zip(curve["unmet"], curve["unmet"][1:]))


def test_effectiveness_curve_drops_dominated_points():
    frame = pd.DataFrame(
        {
            "obj1": [5.0, 4.0, 1.0, 0.0],
            "obj2": [5.0, 4.0, 4.0, 2.0],
            "obj3": [100.0, 200.0, 200.0, 150.0],
        }
    )
    curve = effectiveness_curve(SweepTable(frame=frame))
    assert curve.to_dict(orient="list") == {"cost": [100.0, 150.0], "unmet": [10.0, 2.0]}
    with pytest.raises(ValueError):
        effectiveness_curve(SweepTable(frame=frame.iloc[0:0]))


def test_shortfall_of_an_empty_plan(bundled_instance):
    series = shortfall_series(bundled_instance, Solution())
    assert list(series.columns) == SERIES_COLUMNS
    per_cell = len(bundled_instance.injuries) + len(bundled_instance.commodities)
    assert len(series) == per_cell * len(bundled_instance.demand_nodes) * bundled_instance.periods
    # A2 at node 2 is due in periods 1 and 5 only
    assert series_value(series, "commodity", "A2", "2", 4, "shortfall") == pytest.approx(0.0)
    assert series_value(series, "commodity", "A2", "2", 5, "shortfall") == pytest.approx(50.0)
    assert series_value(series, "commodity", "A2", "2", 5) == pytest.approx(94.0)
    with pytest.raises(KeyError):
        series_value(series, "commodity", "A2", "2", 99)


def test_route_table_lists_positive_flows():
    sol = Solution()
    sol.set("Z", ("3", "1", "truck", 2), 1.0)
    sol.set("U", ("A1", "3", "3", "1", "truck", 2), 12.5)
    sol.set("U", ("A2", "3", "3", "1", "truck", 2), 0.0)
    table = route_table(sol)
    assert list(table.columns) == ROUTE_COLUMNS
    assert list(table["kind"]) == ["commodity", "vehicle"]
    assert table.iloc[0]["quantity"] == pytest.approx(12.5)
    assert route_table(Solution()).empty


def test_write_json_replaces_missing_values(tmp_path):
    frame = pd.DataFrame({"gamma_scale": [0.0, 1.0], "objective": [3.0, float("nan")]})
    path = write_json(frame, tmp_path / "nested" / "table.json")
    assert json.loads(path.read_text(encoding="utf-8")) == [
        {"gamma_scale": 0.0, "objective": 3.0},
        {"gamma_scale": 1.0, "objective": None},
    ]


def test_strict_sweep_checks_rows_in_strict_form(monkeypatch):
    forms = []

    def recording_check(inst, solution, *, strict_eq5=False):
        forms.append(strict_eq5)
        return check(inst, solution, strict_eq5=strict_eq5)

    monkeypatch.setattr("relief_planner.analysis.sweep.check", recording_check)
    config = SweepConfig(fgp=FgpConfig(backend="embedded", strict_eq5=True))
    table = weight_sweep(random_instance(1), 2, config=config)
    assert len(table) == 6
    assert forms == [True] * 6
    assert list(table.frame["checker_passed"]) == [True] * 6
