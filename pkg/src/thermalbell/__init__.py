"""Thermal Bell violation, concurrence and entropic disorder in the all-to-all Heisenberg model."""

from .collective import ModelParams, SectorTable, build_sector_table, partition_function
from .figures import figure_preset, run_figure
from .reduced import XStateElements, to_density_matrix, x_state_from_expectations
from .sweep import (
    CavityParams,
    SweepSpec,
    ThresholdQuery,
    ThresholdResult,
    cavity_sweep,
    evaluate_point,
    find_threshold,
    run_sweep,
)
from .witnesses import WitnessReport, witness_report

__all__ = [
    "CavityParams",
    "ModelParams",
    "SectorTable",
    "SweepSpec",
    "ThresholdQuery",
    "ThresholdResult",
    "WitnessReport",
    "XStateElements",
    "build_sector_table",
    "cavity_sweep",
    "evaluate_point",
    "figure_preset",
    "find_threshold",
    "partition_function",
    "run_figure",
    "run_sweep",
    "to_density_matrix",
    "witness_report",
    "x_state_from_expectations",
]
