"""Heat semigroup experiments on uniform grids."""

from ._caloric import (
    AnalyticSolution,
    BoundaryMode,
    CaloricError,
    ExperimentConfig,
    GrowthVerdict,
    HeatMethod,
    HeatOperatorConfig,
    InitialDatum,
    SchwartzProbe,
    SpatialGrid,
    TestFunction,
    growth_fit,
    heat_evolve,
    heat_residual,
    homotopy_levels,
    pipeline_names,
    recover,
    run_acceptance,
    run_experiment,
)

__all__ = [
    "AnalyticSolution",
    "BoundaryMode",
    "CaloricError",
    "ExperimentConfig",
    "GrowthVerdict",
    "HeatMethod",
    "HeatOperatorConfig",
    "InitialDatum",
    "SchwartzProbe",
    "SpatialGrid",
    "TestFunction",
    "growth_fit",
    "heat_evolve",
    "heat_residual",
    "homotopy_levels",
    "pipeline_names",
    "recover",
    "run_acceptance",
    "run_experiment",
]
