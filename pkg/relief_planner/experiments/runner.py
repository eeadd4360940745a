"""CLI entry point for planning runs, sweeps and verification."""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer

from ..analysis import SweepConfig, route_table, shortfall_series, write_csv, write_json
from ..checker import Solution, check
from ..checker.oracle import oracle_solve
from ..errors import (
    DimensionError,
    InstanceError,
    ModelSizeError,
    SizeGuardError,
    SolverError,
    WeightError,
)
from ..fgp import FgpConfig
from ..instance import Instance, load_instance, random_instance, serialize_instance, validate
from ..model import assemble, write_lp_text
from ..state import JSONResultStore
from ..utils.logging_utils import setup_logging
from .manifest import RunManifest, digest_file
from .pipelines import run_pis_nis_pipeline, run_robustness_pipeline, run_solve_pipeline, run_sweep_pipeline

app = typer.Typer(help="Robust multi-period emergency logistics planner")

EXIT_INPUT = 1
EXIT_SOLVER = 2
EXIT_SIZE = 3


@contextmanager
def _exit_codes() -> Iterator[None]:
    """Map library exceptions to the documented exit codes."""

    try:
        yield
    except (ModelSizeError, SizeGuardError) as exc:
        typer.secho(f"size guard: {exc}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=EXIT_SIZE)
    except SolverError as exc:
        typer.secho(f"solver failure ({exc.status}): {exc}", fg=typer.colors.RED, err=True)
        if exc.diagnostics:
            typer.echo(json.dumps(exc.diagnostics, sort_keys=True, default=str), err=True)
        raise typer.Exit(code=EXIT_SOLVER)
    except (InstanceError, WeightError, DimensionError, FileNotFoundError, ValueError) as exc:
        typer.secho(f"input error: {exc}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=EXIT_INPUT)


def _parse_floats(text: str, what: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"{what} must be comma-separated numbers: {text!r}") from exc


def _parse_objectives(text: str) -> tuple:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ValueError(f"objectives must be comma-separated ids: {text!r}") from exc
    if not values or any(v not in (1, 2, 3, 4) for v in values) or len(set(values)) != len(values):
        raise ValueError(f"objectives must be distinct ids from 1..4: {text!r}")
    return values


def _load(instance: Path, gamma_scale: float) -> Instance:
    if not 0.0 <= gamma_scale <= 1.0:
        raise ValueError(f"gamma scale must lie in [0, 1], got {gamma_scale}")
    inst = load_instance(instance)
    report = validate(inst)
    if not report.ok:
        first = report.violations[0]
        raise InstanceError(first.code, f"{first.message} ({len(report.violations)} violation(s))")
    return inst.with_gamma_scale(gamma_scale) if gamma_scale != 1.0 else inst


def _write_manifest(store: JSONResultStore, command: str, instance: Path, flags: Dict[str, Any], started: float, outcome: Dict[str, Any]) -> None:
    manifest = RunManifest(
        command=command,
        instance_digest=digest_file(instance),
        flags={key: str(value) if isinstance(value, Path) else value for key, value in flags.items()},
        wall_time=time.perf_counter() - started,
        outcome=outcome,
    )
    store.save("manifest", manifest.to_dict())


@app.command()
def solve(
    instance: Path = typer.Option(..., "--instance", help="Instance JSON file"),
    weights: str = typer.Option("0.25,0.25,0.25,0.25", "--weights", help="Comma-separated objective weights"),
    gamma_scale: float = typer.Option(1.0, "--gamma-scale", help="Multiply every uncertainty budget by this factor"),
    objectives: str = typer.Option("1,2,3,4", "--objectives", help="Objective ids taking part in the goal program"),
    jobs: int = typer.Option(1, "--jobs", help="Concurrent single-objective solves"),
    out: Path = typer.Option(Path("results/solve"), "--out", help="Directory for output files"),
    strict_eq5: bool = typer.Option(False, "--strict-eq5", help="Use the literal injury balance row"),
    backend: Optional[str] = typer.Option(None, "--backend", help="auto | embedded | highs"),
    verbose: bool = typer.Option(False, "--verbose", help="Debug logging"),
) -> None:
    """Solve the weighted goal program and write solution, result and manifest."""

    setup_logging(verbose)
    started = time.perf_counter()
    with _exit_codes():
        weight_values = _parse_floats(weights, "weights")
        config = FgpConfig(objectives=_parse_objectives(objectives), backend=backend, strict_eq5=strict_eq5, jobs=jobs)
        inst = _load(instance, gamma_scale)
        run = run_solve_pipeline(inst, weight_values, config=config)
    result, report = run["result"], run["report"]

    store = JSONResultStore(out)
    store.save_solution("solution", result.solution)
    store.save("fgp_result", result.to_dict())
    flags = {"weights": weight_values, "gamma_scale": gamma_scale, "objectives": list(config.objectives),
             "jobs": jobs, "strict_eq5": strict_eq5, "backend": backend}
    _write_manifest(store, "solve", instance, flags, started,
                    {"status": result.status, "checker_passed": report.passed, "master_objective": result.master_objective})

    typer.echo(json.dumps(result.to_dict(), indent=2, sort_keys=True))
    if not report.passed:
        typer.secho(f"checker rejected the solution: {len(report.violations)} violation(s)", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=EXIT_SOLVER)
    typer.secho(f"Saved results to {out}", fg=typer.colors.GREEN)


@app.command("pis-nis")
def pis_nis(
    instance: Path = typer.Option(..., "--instance", help="Instance JSON file"),
    gamma_scale: float = typer.Option(1.0, "--gamma-scale"),
    objectives: str = typer.Option("1,2,3,4", "--objectives"),
    jobs: int = typer.Option(1, "--jobs"),
    out: Path = typer.Option(Path("results/pis_nis"), "--out"),
    strict_eq5: bool = typer.Option(False, "--strict-eq5"),
    backend: Optional[str] = typer.Option(None, "--backend"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Print the positive and negative ideal values of every objective."""

    setup_logging(verbose)
    started = time.perf_counter()
    with _exit_codes():
        config = FgpConfig(objectives=_parse_objectives(objectives), backend=backend, strict_eq5=strict_eq5, jobs=jobs)
        inst = _load(instance, gamma_scale)
        run = run_pis_nis_pipeline(inst, config=config)
    ideal = run["ideal"]

    store = JSONResultStore(out)
    store.save("pis_nis", ideal.to_dict())
    flags = {"gamma_scale": gamma_scale, "objectives": list(config.objectives), "strict_eq5": strict_eq5, "backend": backend}
    _write_manifest(store, "pis-nis", instance, flags, started, {"checker_passed": run["checker_passed"]})

    typer.echo(f"{'objective':>10} {'PIS':>16} {'NIS':>16}")
    for which, pis, nis in zip(ideal.objectives, ideal.pis, run["nis"]):
        typer.echo(f"{which:>10} {pis:>16.6f} {nis:>16.6f}")
    if not run["checker_passed"]:
        raise typer.Exit(code=EXIT_SOLVER)


@app.command()
def sweep(
    instance: Path = typer.Option(..., "--instance", help="Instance JSON file"),
    grid: int = typer.Option(5, "--grid", help="Grid resolution n (step 1/n)"),
    full_simplex: bool = typer.Option(False, "--full-simplex", help="Vary every weight, not only the first two"),
    gamma_scale: float = typer.Option(1.0, "--gamma-scale"),
    objectives: str = typer.Option("1,2,3,4", "--objectives"),
    jobs: int = typer.Option(1, "--jobs", help="Concurrent grid points"),
    out: Path = typer.Option(Path("results/sweep"), "--out"),
    strict_eq5: bool = typer.Option(False, "--strict-eq5"),
    backend: Optional[str] = typer.Option(None, "--backend"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Weight-grid sensitivity sweep with CSV/JSON tables and the cost frontier."""

    setup_logging(verbose)
    started = time.perf_counter()
    with _exit_codes():
        if grid < 2:
            raise ValueError(f"grid must be >= 2, got {grid}")
        fgp = FgpConfig(objectives=_parse_objectives(objectives), backend=backend, strict_eq5=strict_eq5)
        config = SweepConfig(fgp=fgp, full_simplex=full_simplex, jobs=jobs)
        inst = _load(instance, gamma_scale)
        run = run_sweep_pipeline(inst, grid, config=config)
    table = run["table"]

    store = JSONResultStore(out)
    table.to_csv(out / "sweep.csv")
    table.to_json(out / "sweep.json")
    if run["curve"] is not None:
        write_csv(run["curve"], out / "effectiveness.csv")
    flags = {"grid": grid, "full_simplex": full_simplex, "gamma_scale": gamma_scale,
             "objectives": list(fgp.objectives), "jobs": jobs, "strict_eq5": strict_eq5, "backend": backend}
    _write_manifest(store, "sweep", instance, flags, started, {"rows": len(table), "checker_passed": run["checker_passed"]})
    typer.secho(f"Wrote {len(table)} sweep rows to {out / 'sweep.csv'}", fg=typer.colors.GREEN)
    if not run["checker_passed"]:
        raise typer.Exit(code=EXIT_SOLVER)


@app.command("check")
def check_command(
    instance: Path = typer.Option(..., "--instance", help="Instance JSON file"),
    solution: Path = typer.Option(..., "--solution", help="Solution JSON file"),
    gamma_scale: float = typer.Option(1.0, "--gamma-scale"),
    strict_eq5: bool = typer.Option(False, "--strict-eq5"),
    out: Optional[Path] = typer.Option(None, "--out", help="Directory for check_report.json and shortfall tables"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Re-verify a solution file against every model equation."""

    setup_logging(verbose)
    with _exit_codes():
        inst = _load(instance, gamma_scale)
        sol = Solution.load(solution)
        report = check(inst, sol, strict_eq5=strict_eq5)
    if out is not None:
        store = JSONResultStore(out)
        store.save("check_report", report.to_dict())
        write_csv(shortfall_series(inst, sol), out / "shortfall.csv")
        write_csv(route_table(sol), out / "routes.csv")
    typer.echo(json.dumps({"passed": report.passed, "violations": len(report.violations),
                           "rows_checked": report.rows_checked}, sort_keys=True))
    if not report.passed:
        for violation in report.violations[:20]:
            typer.secho(f"{violation.family}{list(violation.index)} slack {violation.slack:.6g}", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=EXIT_SOLVER)


@app.command()
def oracle(
    instance: Path = typer.Option(..., "--instance", help="Instance JSON file"),
    objective: int = typer.Option(1, "--objective", help="Objective id 1..4"),
    gamma_scale: float = typer.Option(1.0, "--gamma-scale"),
    strict_eq5: bool = typer.Option(False, "--strict-eq5"),
    max_points: Optional[int] = typer.Option(None, "--max-points", help="Override the enumeration guard"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Exhaustive optimum over vehicle plans for tiny instances."""

    setup_logging(verbose)
    with _exit_codes():
        inst = _load(instance, gamma_scale)
        value = oracle_solve(inst, objective, strict_eq5=strict_eq5, max_points=max_points)
    if value is None:
        typer.secho("oracle found no feasible plan", fg=typer.colors.RED, err=True)
        raise typer.Exit(code=EXIT_SOLVER)
    typer.echo(json.dumps({"objective": objective, "value": value}, sort_keys=True))


@app.command()
def robustness(
    instance: Path = typer.Option(..., "--instance", help="Instance JSON file"),
    objective: int = typer.Option(2, "--objective", help="Objective id 1..4"),
    scales: str = typer.Option("0,0.25,0.5,0.75,1", "--scales", help="Comma-separated budget scales"),
    out: Path = typer.Option(Path("results/robustness"), "--out"),
    strict_eq5: bool = typer.Option(False, "--strict-eq5"),
    backend: Optional[str] = typer.Option(None, "--backend"),
    verbose: bool = typer.Option(False, "--verbose"),
) -> None:
    """Single-objective optimum as the uncertainty budgets grow."""

    setup_logging(verbose)
    started = time.perf_counter()
    config = FgpConfig(backend=backend, strict_eq5=strict_eq5)
    with _exit_codes():
        scale_values = _parse_floats(scales, "scales")
        inst = _load(instance, 1.0)
        run = run_robustness_pipeline(inst, objective, scale_values, config=config)
    store = JSONResultStore(out)
    write_csv(run["table"], out / "robustness.csv")
    write_json(run["table"], out / "robustness.json")
    flags = {"objective": objective, "scales": scale_values, "strict_eq5": strict_eq5, "backend": backend}
    _write_manifest(store, "robustness", instance, flags, started, {"rows": len(run["table"])})
    typer.echo(run["table"].to_string(index=False))


@app.command()
def generate(
    out: Path = typer.Option(..., "--out", help="Where to write the instance JSON"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
) -> None:
    """Write a seeded random tiny instance."""

    setup_logging()
    inst = random_instance(seed)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(serialize_instance(inst) + "\n", encoding="utf-8")
    typer.secho(f"Wrote instance with seed {seed} to {out}", fg=typer.colors.GREEN)


@app.command("dump-lp")
def dump_lp(
    instance: Path = typer.Option(..., "--instance", help="Instance JSON file"),
    objective: int = typer.Option(1, "--objective", help="Objective id 1..4"),
    out: Path = typer.Option(Path("results/model.lp"), "--out", help="LP file to write"),
    gamma_scale: float = typer.Option(1.0, "--gamma-scale"),
    strict_eq5: bool = typer.Option(False, "--strict-eq5"),
) -> None:
    """Write the assembled single-objective model in LP text format."""

    setup_logging()
    with _exit_codes():
        inst = _load(instance, gamma_scale)
        lp, _ = assemble(inst, objective, strict_eq5=strict_eq5)
    write_lp_text(lp, out)
    typer.secho(f"Wrote {lp.num_rows} rows x {lp.num_columns} columns to {out}", fg=typer.colors.GREEN)


if __name__ == "__main__":
    app()
