"""Experiment pipelines and run manifests."""
from .manifest import RunManifest, digest_file
from .pipelines import (
    run_pis_nis_pipeline,
    run_robustness_pipeline,
    run_solve_pipeline,
    run_sweep_pipeline,
)

__all__ = [
    "RunManifest",
    "digest_file",
    "run_pis_nis_pipeline",
    "run_robustness_pipeline",
    "run_solve_pipeline",
    "run_sweep_pipeline",
]
