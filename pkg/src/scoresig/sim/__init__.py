"""Monte Carlo error-rate experiments."""

from .distributions import DistributionSpec, sample_distribution
from .experiments import (
    TEST_NAMES,
    TESTS,
    ErrorRateRow,
    ErrorRateTable,
    ExperimentConfig,
    run_type1_experiment,
    run_type2_experiment,
)
from .presets import PRESETS, get_preset, run_preset
from .tables import TABLE_JSON_SCHEMA, emit_plot_data, emit_statistics, emit_table, read_table_csv

__all__ = [
    "DistributionSpec",
    "ErrorRateRow",
    "ErrorRateTable",
    "ExperimentConfig",
    "PRESETS",
    "TABLE_JSON_SCHEMA",
    "TESTS",
    "TEST_NAMES",
    "emit_plot_data",
    "emit_statistics",
    "emit_table",
    "get_preset",
    "read_table_csv",
    "run_preset",
    "run_type1_experiment",
    "run_type2_experiment",
    "sample_distribution",
]
