"""Have enough scores been collected?"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import partial

import numpy as np

from ._parallel import chunk_sizes, ordered_map
from .classic import bootstrap_test, permutation_test
from .errors import ConfigError, DomainError
from .rng import derive_stream
from .samples import SampleLike, as_sample

POWER_TESTS = {"bootstrap": bootstrap_test, "permutation": permutation_test}
_POWER_CHUNK = 50


@dataclass(frozen=True)
class PowerConfig:
    """Settings for :func:`bootstrap_power_analysis`.

    ``lift`` multiplies every score (or is added to it when ``additive`` is
    set). Multiplicative lifts only improve positive scores; use the
    additive mode for samples that contain negative values.
    """

    lift: float = 1.25
    num_bootstrap: int = 1000
    alpha: float = 0.05
    test: str = "bootstrap"
    seed: int = 1234
    num_test_resamples: int = 1000
    additive: bool = False
    num_jobs: int = 1

    def __post_init__(self):
        if self.lift <= 0.0 and not self.additive:
            raise ConfigError(f"lift must be positive in multiplicative mode, got {self.lift}")
        if self.num_bootstrap < 1:
            raise ConfigError(f"num_bootstrap must be positive, got {self.num_bootstrap}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.test not in POWER_TESTS:
            raise ConfigError(f"test must be one of {sorted(POWER_TESTS)}, got {self.test!r}")
        if self.num_jobs < 1:
            raise ConfigError(f"num_jobs must be positive, got {self.num_jobs}")


def _power_chunk(scores: np.ndarray, lifted: np.ndarray, config: PowerConfig, job: tuple[int, int]) -> int:
    start, size = job
    test = POWER_TESTS[config.test]
    n = len(scores)
    significant = 0
    for i in range(start, start + size):
        stream = derive_stream(config.seed, i)
        gen = stream.generator()
        base = scores[gen.integers(0, n, n)]
        boosted = lifted[gen.integers(0, n, n)]
        result = test(boosted, base, config.num_test_resamples, seed=stream.substream(0))
        significant += result.p_value < config.alpha
    return significant


def bootstrap_power_analysis(scores: SampleLike, config: PowerConfig | None = None, **overrides) -> float:
    """Estimate statistical power by testing resampled scores against a lifted copy.

    A lifted copy of the sample is built once. Each iteration resamples both
    the original and the lifted scores and runs a one-sided test of "lifted
    better than original"; the returned power is the share of significant
    iterations. Power well below 0.8 suggests the scores vary too much to
    detect an improvement of the size of the lift.
    """
    config = replace(config or PowerConfig(), **overrides)
    values = as_sample(scores).values
    if len(values) < 2:
        raise DomainError("power analysis needs at least two scores")
    lifted = values + config.lift if config.additive else values * config.lift

    sizes = chunk_sizes(config.num_bootstrap, _POWER_CHUNK)
    jobs = [(i * _POWER_CHUNK, size) for i, size in enumerate(sizes)]
    counts = ordered_map(partial(_power_chunk, values, lifted, config), jobs, config.num_jobs)
    return sum(counts) / config.num_bootstrap


def aso_uncertainty_reduction(m_old: int, n_old: int, m_new: int, n_new: int) -> float:
    """Factor by which the ASO bound's uncertainty shrinks when going to larger samples.

    The width of the bound scales with ``sqrt((n + m) / (n * m))``; the
    factor is the ratio of that term before and after.
    """
    sizes = {"m_old": m_old, "n_old": n_old, "m_new": m_new, "n_new": n_new}
    for name, value in sizes.items():
        if value < 1:
            raise DomainError(f"{name} must be a positive sample size, got {value}")
    old = m_old * n_old / (m_old + n_old)
    new = m_new * n_new / (m_new + n_new)
    return math.sqrt(new / old)
