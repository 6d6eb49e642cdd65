"""Experiment orchestration, analysis and file output."""

from .analysis import (
    HeatmapResult,
    PercentResult,
    ScalingFit,
    box_stats,
    fit_scaling,
    mean_placement,
    percent_of_optimal,
    scaling_intersection,
)
from .experiment import (
    METHODS,
    ExperimentConfig,
    RunRecord,
    enumerate_degenerate,
    run_experiment,
    run_seeds,
    solve_once,
)
from .fixtures import cobyla_cvar_samples, optimal_layouts_l4

__all__ = [
    "METHODS",
    "ExperimentConfig",
    "HeatmapResult",
    "PercentResult",
    "RunRecord",
    "ScalingFit",
    "box_stats",
    "cobyla_cvar_samples",
    "enumerate_degenerate",
    "fit_scaling",
    "mean_placement",
    "optimal_layouts_l4",
    "percent_of_optimal",
    "run_experiment",
    "run_seeds",
    "scaling_intersection",
    "solve_once",
]
