"""Significance testing for comparing scores of stochastic experiments.

The central test is Almost Stochastic Order (:func:`aso`); classical
bootstrap, permutation and rank tests, sample-size utilities and a
Monte Carlo error-rate harness (:mod:`scoresig.sim`) sit around it.
"""

from .aso import AsoConfig, AsoResult, ComparisonTable, aso, bonferroni_correction, compute_violation_ratio, multi_aso
from .classic import (
    PValueResult,
    bootstrap_test,
    mann_whitney_u,
    permutation_test,
    student_t_one_sided,
    wilcoxon_signed_rank,
)
from .rng import RngStream, derive_seed, derive_stream
from .sample_size import PowerConfig, aso_uncertainty_reduction, bootstrap_power_analysis
from .samples import (
    ScoreSample,
    empirical_quantile,
    inverse_transform_resample,
    make_sample,
    std_normal_quantile,
)

__version__ = "0.1.0"

__all__ = [
    "AsoConfig",
    "AsoResult",
    "ComparisonTable",
    "PValueResult",
    "PowerConfig",
    "RngStream",
    "ScoreSample",
    "aso",
    "aso_uncertainty_reduction",
    "bonferroni_correction",
    "bootstrap_power_analysis",
    "bootstrap_test",
    "compute_violation_ratio",
    "derive_seed",
    "derive_stream",
    "empirical_quantile",
    "inverse_transform_resample",
    "make_sample",
    "mann_whitney_u",
    "multi_aso",
    "permutation_test",
    "std_normal_quantile",
    "student_t_one_sided",
    "wilcoxon_signed_rank",
]
