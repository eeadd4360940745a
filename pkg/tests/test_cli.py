import json

import pandas as pd
import pytest
from typer.testing import CliRunner

from relief_planner.experiments.runner import app

runner = CliRunner()


def _json_line(output: str):
    for line in output.splitlines():
        if line.startswith("{") and line.endswith("}"):
            return json.loads(line)
    raise AssertionError(f"no JSON line in output: {output!r}")


@pytest.fixture
def tiny_instance(tmp_path):
    path = tmp_path / "tiny.json"
    result = runner.invoke(app, ["generate", "--out", str(path), "--seed", "1"])
    assert result.exit_code == 0, result.output
    return path


def test_generate_writes_a_valid_instance(tiny_instance):
    document = json.loads(tiny_instance.read_text(encoding="utf-8"))
    assert document["periods"] >= 1
    assert document["nodes"]


def test_solve_then_check(tiny_instance, tmp_path):
    out = tmp_path / "solve"
    result = runner.invoke(app, ["solve", "--instance", str(tiny_instance), "--backend", "embedded", "--out", str(out)])
    assert result.exit_code == 0, result.output
    for name in ("solution.json", "fgp_result.json", "manifest.json"):
        assert (out / name).exists()
    manifest = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
    assert manifest["command"] == "solve"
    assert manifest["outcome"]["checker_passed"] is True

    report_dir = tmp_path / "check"
    checked = runner.invoke(
        app,
        ["check", "--instance", str(tiny_instance), "--solution", str(out / "solution.json"), "--out", str(report_dir)],
    )
    assert checked.exit_code == 0, checked.output
    summary = _json_line(checked.output)
    assert summary["passed"] is True
    assert summary["violations"] == 0
    assert (report_dir / "check_report.json").exists()
    assert (report_dir / "shortfall.csv").exists()
    assert (report_dir / "routes.csv").exists()


def test_tampered_solution_is_rejected(tiny_instance, tmp_path):
    path = tmp_path / "bad.json"
    document = {"status": "optimal", "objectives": {}, "families": {"dev_commodity": [["A1", "n1", 1, -5.0]]}}
    path.write_text(json.dumps(document), encoding="utf-8")
    result = runner.invoke(app, ["check", "--instance", str(tiny_instance), "--solution", str(path)])
    assert result.exit_code == 2
    assert _json_line(result.output)["passed"] is False


def test_weights_off_the_simplex(bundled_path):
    result = runner.invoke(app, ["solve", "--instance", str(bundled_path), "--weights", "0.5,0.6", "--objectives", "1,2"])
    assert result.exit_code == 1


def test_missing_and_invalid_inputs(tmp_path):
    result = runner.invoke(app, ["solve", "--instance", str(tmp_path / "missing.json")])
    assert result.exit_code == 1
    broken = tmp_path / "broken.json"
    broken.write_text('{"periods": 2, "nodes": [{"id": "a", "roles": ["harbour"]}]}', encoding="utf-8")
    result = runner.invoke(app, ["pis-nis", "--instance", str(broken)])
    assert result.exit_code == 1


def test_gamma_scale_out_of_range(tiny_instance):
    result = runner.invoke(app, ["solve", "--instance", str(tiny_instance), "--gamma-scale", "1.5"])
    assert result.exit_code == 1


@pytest.mark.parametrize(
    "arguments",
    [
        ["solve", "--weights", "a,b"],
        ["solve", "--objectives", "9"],
        ["pis-nis", "--objectives", "1,1"],
        ["sweep", "--grid", "1"],
        ["robustness", "--scales", "0,x"],
    ],
)
def test_malformed_flags_are_input_errors(tiny_instance, tmp_path, arguments):
    command, *flags = arguments
    result = runner.invoke(app, [command, "--instance", str(tiny_instance), "--out", str(tmp_path / "out"), *flags])
    assert result.exit_code == 1, result.output
    assert not (tmp_path / "out").exists()


def test_oracle_guard_on_the_full_example(bundled_path):
    result = runner.invoke(app, ["oracle", "--instance", str(bundled_path)])
    assert result.exit_code == 3


def test_oracle_on_a_tiny_instance(tiny_instance):
    result = runner.invoke(app, ["oracle", "--instance", str(tiny_instance), "--objective", "3"])
    assert result.exit_code == 0, result.output
    answer = _json_line(result.output)
    assert answer["objective"] == 3
    assert answer["value"] >= 0.0


def test_sweep_writes_tables(tiny_instance, tmp_path):
    out = tmp_path / "sweep"
    result = runner.invoke(
        app, ["sweep", "--instance", str(tiny_instance), "--grid", "2", "--backend", "embedded", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    table = pd.read_csv(out / "sweep.csv")
    assert len(table) == 6
    assert (out / "sweep.json").exists()
    assert (out / "effectiveness.csv").exists()
    assert json.loads((out / "manifest.json").read_text(encoding="utf-8"))["outcome"]["rows"] == 6


def test_robustness_table(tiny_instance, tmp_path):
    out = tmp_path / "robust"
    result = runner.invoke(
        app,
        ["robustness", "--instance", str(tiny_instance), "--objective", "2", "--scales", "0,1",
         "--backend", "embedded", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    table = pd.read_csv(out / "robustness.csv")
    assert list(table["gamma_scale"]) == [0.0, 1.0]
    assert table["objective"].iloc[1] >= table["objective"].iloc[0] - 1e-6


def test_dump_lp(tiny_instance, tmp_path):
    out = tmp_path / "model.lp"
    result = runner.invoke(app, ["dump-lp", "--instance", str(tiny_instance), "--objective", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    text = out.read_text(encoding="utf-8")
    assert text.startswith("\\ relief_model_obj1\n")
    assert text.endswith("End\n")


def test_pis_nis_table(tiny_instance, tmp_path):
    out = tmp_path / "ideal"
    result = runner.invoke(app, ["pis-nis", "--instance", str(tiny_instance), "--backend", "embedded", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "PIS" in result.output
    stored = json.loads((out / "pis_nis.json").read_text(encoding="utf-8"))
    assert stored["objectives"] == [1, 2, 3, 4]
    assert len(stored["nis"]) == 4


def test_pis_nis_needs_two_objectives(tiny_instance, tmp_path):
    result = runner.invoke(
        app, ["pis-nis", "--instance", str(tiny_instance), "--objectives", "1", "--backend", "embedded",
              "--out", str(tmp_path / "single")]
    )
    assert result.exit_code == 1
