import json

import numpy as np
import pytest
from conftest import Golden

from relief_planner.checker import Solution, check
from relief_planner.errors import ModelSizeError
from relief_planner.fgp import FgpConfig, solve_single
from relief_planner.instance import arcs, parse_instance
from relief_planner.model import (
    BINARY,
    INTEGER,
    LE,
    LinearProgram,
    VariableIndex,
    assemble,
    build_objective,
    build_structure,
    decode_solution,
    encode_solution,
    family_counts,
    write_lp_text,
)
from relief_planner.model.constraints import emit_injury_constraints


def test_row_counts_on_bundled_example(bundled_instance):
    lp, _ = build_structure(bundled_instance)
    counts = family_counts(lp.rows)
    # 2 injuries x 2 demand nodes x 7 periods
    assert counts[5] == 28
    # 2 commodities x 2 demand nodes x 7 periods
    assert counts[12] == 28
    # 2 injuries x 2 hospitals x 7 periods x 3 vehicles
    assert counts[8] == 84
    assert counts[9] == 2 * 2 * 2 * 7 * 3
    assert all(len(row.coefficients) == 2 for row in lp.rows_of(9))


def test_model_size_matches_the_frozen_counts(bundled_instance, golden):
    lp, vix = assemble(bundled_instance, 4)
    size = {"arcs": len(arcs(bundled_instance)), "obj4_offset": lp.objective_offset}
    size.update({f"columns.{name}": len(vix.family(name)) for name in vix.families()})
    size.update({f"rows.{family}": count for family, count in family_counts(lp.rows).items()})
    golden.check("bundled_model_size", size)


def test_missing_golden_fails_instead_of_recording(tmp_path):
    keeper = Golden(tmp_path, update=False)
    with pytest.raises(pytest.fail.Exception, match="missing"):
        keeper.check("absent", [1.0])
    assert not (tmp_path / "absent.json").exists()


def test_every_equation_family_is_present(bundled_instance):
    lp, _ = build_structure(bundled_instance)
    assert lp.families() >= set(range(5, 25))
    assert {15, 16, 21} <= lp.structural_families


def test_column_kinds_and_bounds(bundled_instance):
    lp, vix = build_structure(bundled_instance)
    for (_, _o, _p, v, _t), col in vix.family("Z"):
        assert lp.kinds[col] == INTEGER
        assert lp.upper[col] == bundled_instance.fleet_size(v)
    for _, col in vix.family("u"):
        assert lp.kinds[col] == BINARY
    for _, col in vix.family("delta"):
        assert lp.upper[col] == 1.0
    assert len(vix.family("u")) == 2


def test_incompatible_flows_have_no_columns(bundled_instance):
    _, vix = build_structure(bundled_instance)
    assert all(coord[5] == "truck" for coord, _ in vix.family("U"))
    assert all(coord[5] in ("ambulance", "helicopter") for coord, _ in vix.family("W"))


def test_robust_dual_columns_only_where_deviations_exist(bundled_instance):
    _, vix = build_structure(bundled_instance)
    assert ("eta_commodity", "A1", "1", 1) in vix
    assert ("theta_commodity", "A1", "1", 5, 1) in vix
    assert ("theta_commodity", "A1", "1", 5, 5) in vix
    assert ("theta_commodity", "A1", "1", 5, 3) not in vix

    nominal = bundled_instance.without_deviations()
    _, nominal_vix = build_structure(nominal)
    assert not nominal_vix.family("eta_commodity")
    assert not nominal_vix.family("theta_injury")


def test_assembly_is_deterministic(bundled_instance):
    first, first_vix = assemble(bundled_instance, 3)
    second, second_vix = assemble(bundled_instance, 3)
    assert list(first_vix) == list(second_vix)
    assert first.rows == second.rows
    assert first.objective == second.objective
    assert write_lp_text(first) == write_lp_text(second)


def test_underutilization_offset(bundled_instance):
    lp, vix = assemble(bundled_instance, 4)
    zero = np.zeros(lp.num_columns)
    # (49 + 46 + 35 + 25) capacity per period over 7 periods
    assert lp.objective_value(zero) == pytest.approx(1085.0)
    vector = build_objective(bundled_instance, vix, 4)
    assert set(vector.coefficients.values()) == {-1.0}


def test_objective_coefficients(bundled_instance):
    _, vix = build_structure(bundled_instance)
    injuries = build_objective(bundled_instance, vix, 1)
    assert injuries.coefficients[vix.column(("dev_injury", "H1", "1", 1))] == 3.0
    cost = build_objective(bundled_instance, vix, 3)
    assert cost.coefficients[vix.column(("Z", "1", "4", "truck", 1))] == 2 * 80.0
    assert cost.coefficients[vix.column(("u", "6"))] == 1500.0
    with pytest.raises(ValueError):
        build_objective(bundled_instance, vix, 5)


def test_strict_injury_balance_changes_only_its_family(bundled_instance):
    default, _ = build_structure(bundled_instance)
    strict, _ = build_structure(bundled_instance, strict_eq5=True)
    assert family_counts(default.rows) == family_counts(strict.rows)
    assert all(row.sense == LE for row in strict.rows_of(5))
    assert default.rows_of(6) == strict.rows_of(6)


def test_first_period_balance_row(bundled_instance):
    lp, vix = build_structure(bundled_instance)
    rows = {row.index: row for row in lp.rows_of(12)}
    row = rows[("A1", "1", 1)]
    assert row.rhs == 30.0
    coefficients = dict(row.coefficients)
    assert coefficients[vix.column(("dev_commodity", "A1", "1", 1))] == 1.0
    # budget of one uncertain period
    assert coefficients[vix.column(("eta_commodity", "A1", "1", 1))] == -1.0
    assert coefficients[vix.column(("theta_commodity", "A1", "1", 1, 1))] == -1.0


def test_nonzero_cap_raises(bundled_instance):
    with pytest.raises(ModelSizeError):
        build_structure(bundled_instance, max_nonzeros=100)


def test_trivially_satisfied_empty_rows_are_skipped():
    lp = LinearProgram()
    assert lp.add_row({}, LE, 0.0, family=1) is None
    assert lp.add_row({}, LE, -1.0, family=1) is not None
    assert lp.num_rows == 1


def test_variable_index_is_a_bijection():
    vix = VariableIndex()
    first = vix.register(("Z", "a", "b", "v", 1))
    second = vix.register(("u", "c"))
    assert (first, second) == (0, 1)
    assert vix.coordinate(second) == ("u", "c")
    assert vix.families() == ["Z", "u"]
    with pytest.raises(KeyError):
        vix.register(("u", "c"))


def test_decode_drops_zeros_and_encodes_back(bundled_instance):
    lp, vix = build_structure(bundled_instance)
    values = np.zeros(lp.num_columns)
    values[vix.column(("dev_commodity", "A1", "1", 1))] = 33.0
    values[vix.column(("u", "7"))] = 1.0
    solution = decode_solution(bundled_instance, vix, values)
    assert solution.values["dev_commodity"] == {("A1", "1", 1): 33.0}
    assert solution.objectives[2] == pytest.approx(66.0)
    assert solution.objectives[3] == pytest.approx(1200.0)
    assert encode_solution(vix, solution) == pytest.approx(list(values))


def test_injury_rows_reference_only_registered_columns(bundled_instance):
    lp, vix = build_structure(bundled_instance)
    rows = emit_injury_constraints(bundled_instance, vix)
    assert rows
    assert max(col for row in rows for col, _ in row.coefficients) < len(vix)


def test_lp_text_dump(bundled_instance, tmp_path):
    lp, _ = assemble(bundled_instance, 1)
    path = tmp_path / "model.lp"
    text = write_lp_text(lp, path)
    assert path.read_text(encoding="utf-8") == text
    assert text.startswith("\\ relief_model_obj1\n")
    assert "\\ eq5[H1, 1, 1]" in text
    assert "\nGeneral\n" in text and "\nBinary\n" in text
    assert text.endswith("End\n")
    assert text.count(" \\ eq") == lp.num_rows


def _stranded_patients(periods):
    """Five patients at ``r`` and one ambulance; the only hospital has no beds."""

    doc = {
        "periods": periods,
        "commodities": [],
        "injuries": [{"id": "H1", "priority": 1}],
        "vehicles": [
            {"id": "ambulance", "load_capacity": 0, "volume_capacity": 0, "injury_capacity": 10,
             "operating_cost": 0, "injuries": ["H1"]}
        ],
        "nodes": [
            {"id": "r", "roles": ["demand"], "injury_demand": [{"injury": "H1", "period": 1, "amount": 5}],
             "vehicle_availability": [{"vehicle": "ambulance", "period": 1, "count": 1}]},
            {"id": "o", "roles": ["permanent_hospital"], "hospital_capacity": [{"injury": "H1", "amount": 0}]},
        ],
        "travel_time": [{"from": "r", "to": "o", "vehicle": "ambulance", "periods": 1}],
    }
    return parse_instance(json.dumps(doc))


def test_no_flow_column_arrives_after_the_last_period(bundled_instance):
    _, vix = build_structure(bundled_instance)
    for family in ("U", "W"):
        columns = vix.family(family)
        assert columns
        for (_, _entity, _source, o, p, v, t), _col in columns:
            assert t + bundled_instance.travel(o, p, v) <= bundled_instance.periods


@pytest.mark.parametrize("backend", ["embedded", "highs"])
@pytest.mark.parametrize("periods", [1, 2])
def test_patients_without_a_bed_stay_unserved(periods, backend):
    inst = _stranded_patients(periods)
    solution = solve_single(inst, 1, FgpConfig(backend=backend))
    assert solution.objectives[1] == pytest.approx(5.0)
    assert solution.total("W") == pytest.approx(0.0)
    assert check(inst, solution).passed


def test_trip_past_the_horizon_is_rejected_by_the_checker():
    inst = _stranded_patients(1)
    sol = Solution()
    sol.set("Z", ("r", "o", "ambulance", 1), 1.0)
    sol.set("W", ("H1", "r", "r", "o", "ambulance", 1), 5.0)
    assert check(inst, sol).families() == ["horizon"]
    _, vix = build_structure(inst)
    assert vix.family("W") == []
