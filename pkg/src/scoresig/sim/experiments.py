"""Monte Carlo Type I / Type II error-rate experiments."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import partial
from typing import Callable

import numpy as np

from .._parallel import ordered_map
from ..aso import AsoConfig, aso
from ..classic import (
    bootstrap_test,
    mann_whitney_u,
    permutation_test,
    student_t_one_sided,
    wilcoxon_signed_rank,
)
from ..errors import ConfigError
from ..rng import RngStream
from .distributions import DistributionSpec, draw

# canonical order; the position of a test fixes its random substream
TESTS = ("aso", "student_t", "bootstrap", "permutation", "wilcoxon", "mann_whitney")
TEST_NAMES = {
    "aso": "ASO",
    "student_t": "Student's t",
    "bootstrap": "Bootstrap",
    "permutation": "Permutation",
    "wilcoxon": "Wilcoxon",
    "mann_whitney": "Mann-Whitney U",
}

_DATA, _TESTS = 0, 1
_SIM_CHUNK = 100


@dataclass(frozen=True)
class ExperimentConfig:
    """Inputs of an error-rate experiment.

    ``dist_b`` is the baseline. Type I runs need ``dist_a == dist_b``.
    Type II runs by sample size use ``dist_a`` as given; runs by mean
    difference ignore it and shift ``dist_b`` by each of
    ``mean_differences`` at ``fixed_size``.

    Rejection at threshold ``t`` means ``p <= t`` for p-value tests and
    ``eps_min < t`` for ASO.
    """

    dist_a: DistributionSpec
    dist_b: DistributionSpec
    sample_sizes: tuple[int, ...] = (5, 10, 15, 20)
    num_simulations_aso: int = 500
    num_simulations_other: int = 1000
    thresholds: tuple[float, ...] = (0.05,)
    tau: float = 0.2
    alpha: float = 0.05
    seed: int = 1234
    tests: tuple[str, ...] = TESTS
    aso_bootstrap: int = 500
    dt: float = 0.005
    num_resamples: int = 1000
    mean_differences: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
    fixed_size: int = 5
    num_jobs: int = 1

    def __post_init__(self):
        unknown = set(self.tests) - set(TESTS)
        if unknown:
            raise ConfigError(f"unknown tests: {sorted(unknown)}")
        if not self.tests:
            raise ConfigError("at least one test is required")
        if min(self.sample_sizes, default=0) < 2 or self.fixed_size < 2:
            raise ConfigError("sample_sizes must be at least 2")
        if "wilcoxon" in self.tests and min(self.sample_sizes + (self.fixed_size,)) < 5:
            raise ConfigError("sample_sizes must be at least 5 for the Wilcoxon test")
        if self.num_simulations_aso < 1 or self.num_simulations_other < 1:
            raise ConfigError("simulation counts must be positive")
        if not self.thresholds:
            raise ConfigError("at least one threshold is required")

    def simulations(self, test: str) -> int:
        return self.num_simulations_aso if test == "aso" else self.num_simulations_other

    def ordered_tests(self) -> tuple[str, ...]:
        return tuple(t for t in TESTS if t in self.tests)

    def to_dict(self) -> dict:
        data = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "num_jobs"}
        data["dist_a"] = self.dist_a.to_dict()
        data["dist_b"] = self.dist_b.to_dict()
        for key in ("sample_sizes", "thresholds", "tests", "mean_differences"):
            data[key] = list(data[key])
        return data


@dataclass(frozen=True)
class ErrorRateRow:
    x: float
    threshold: float
    test: str
    rate: float


@dataclass(frozen=True)
class ErrorRateTable:
    """Aggregated error rates, one row per (x, threshold, test).

    ``x`` is the sample size or the mean difference (see ``x_label``).
    ``statistics`` holds the raw per-simulation p-values / ``eps_min``
    values keyed by ``(x, test)``.
    """

    rows: list[ErrorRateRow]
    error_kind: str
    x_label: str
    config: ExperimentConfig
    num_simulations: dict[str, int]
    statistics: dict = field(default_factory=dict, repr=False, compare=False)

    def rate(self, x: float, threshold: float, test: str) -> float:
        for row in self.rows:
            if row.x == x and row.threshold == threshold and row.test == test:
                return row.rate
        raise KeyError((x, threshold, test))

    def xs(self) -> list[float]:
        return sorted({row.x for row in self.rows})


def _run_test(test: str, a: np.ndarray, b: np.ndarray, stream: RngStream, config: ExperimentConfig) -> float:
    if test == "aso":
        aso_config = AsoConfig(
            alpha=config.alpha, num_bootstrap=config.aso_bootstrap, dt=config.dt, seed=stream.derive_seed()
        )
        return aso(a, b, aso_config).eps_min
    if test == "bootstrap":
        return bootstrap_test(a, b, config.num_resamples, seed=stream).p_value
    if test == "permutation":
        return permutation_test(a, b, config.num_resamples, seed=stream).p_value
    analytic: dict[str, Callable] = {
        "student_t": student_t_one_sided,
        "wilcoxon": wilcoxon_signed_rank,
        "mann_whitney": mann_whitney_u,
    }
    return analytic[test](a, b).p_value


def _simulate_chunk(config: ExperimentConfig, points: list, job: tuple[int, int, int]) -> dict[str, list[float]]:
    point, start, stop = job
    dist_a, dist_b, size = points[point]
    root = RngStream(config.seed)
    data_root = root.substream(_DATA).substream(point)
    test_root = root.substream(_TESTS).substream(point)
    out = {test: [] for test in config.ordered_tests()}
    for sim in range(start, stop):
        gen = data_root.substream(sim).generator()
        a = draw(dist_a, size, gen)
        b = draw(dist_b, size, gen)
        for test in out:
            if sim < config.simulations(test):
                stream = test_root.substream(sim * len(TESTS) + TESTS.index(test))
                out[test].append(_run_test(test, a, b, stream, config))
    return out


def _simulate(config: ExperimentConfig, points: list) -> list[dict[str, np.ndarray]]:
    """Per point, the raw statistic of every simulation for every test."""
    total = max(config.simulations(t) for t in config.ordered_tests())
    jobs = [(p, start, min(start + _SIM_CHUNK, total)) for p in range(len(points)) for start in range(0, total, _SIM_CHUNK)]
    chunks = ordered_map(partial(_simulate_chunk, config, points), jobs, config.num_jobs, processes=True)
    results = [{test: [] for test in config.ordered_tests()} for _ in points]
    for (point, _, _), chunk in zip(jobs, chunks):
        for test, values in chunk.items():
            results[point][test].extend(values)
    return [{test: np.array(values) for test, values in r.items()} for r in results]


def rejections(test: str, statistics: np.ndarray, threshold: float) -> int:
    if test == "aso":
        return int(np.count_nonzero(statistics < threshold))
    return int(np.count_nonzero(statistics <= threshold))


def _tabulate(config, xs, stats, error_kind, x_label) -> ErrorRateTable:
    rows = []
    raw = {}
    for x, point_stats in zip(xs, stats):
        for threshold in config.thresholds:
            for test in config.ordered_tests():
                values = point_stats[test]
                rate = rejections(test, values, threshold) / len(values)
                rows.append(ErrorRateRow(x, threshold, test, rate if error_kind == "type1" else 1.0 - rate))
        for test in config.ordered_tests():
            raw[(x, test)] = point_stats[test]
    return ErrorRateTable(
        rows=rows,
        error_kind=error_kind,
        x_label=x_label,
        config=config,
        num_simulations={t: config.simulations(t) for t in config.ordered_tests()},
        statistics=raw,
    )


def run_type1_experiment(config: ExperimentConfig) -> ErrorRateTable:
    """Rejection rates when both samples come from the same distribution."""
    if config.dist_a != config.dist_b:
        raise ConfigError("a Type I experiment samples both groups from one distribution; dist_a must equal dist_b")
    points = [(config.dist_a, config.dist_b, size) for size in config.sample_sizes]
    stats = _simulate(config, points)
    return _tabulate(config, list(config.sample_sizes), stats, "type1", "size")


def run_type2_experiment(config: ExperimentConfig, mode: str = "by_size") -> ErrorRateTable:
    """Non-rejection rates when A's distribution lies above B's."""
    if mode == "by_size":
        if config.dist_a.mean() <= config.dist_b.mean():
            raise ConfigError("dist_a must have a larger mean than dist_b for a Type II experiment")
        points = [(config.dist_a, config.dist_b, size) for size in config.sample_sizes]
        xs = list(config.sample_sizes)
        x_label = "size"
    elif mode == "by_mean_difference":
        if min(config.mean_differences, default=0.0) <= 0.0:
            raise ConfigError("mean differences must be positive")
        points = [(config.dist_b.shifted(gap), config.dist_b, config.fixed_size) for gap in config.mean_differences]
        xs = list(config.mean_differences)
        x_label = "mean_difference"
    else:
        raise ConfigError(f"mode must be 'by_size' or 'by_mean_difference', got {mode!r}")
    stats = _simulate(config, points)
    return _tabulate(config, xs, stats, "type2", x_label)


def with_seed(config: ExperimentConfig, seed: int, num_jobs: int | None = None) -> ExperimentConfig:
    return replace(config, seed=seed, num_jobs=num_jobs or config.num_jobs)
