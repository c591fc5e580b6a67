"""One-sided classical tests of "A scores higher than B".

All tests return a :class:`PValueResult`; a small ``p_value`` supports the
claim that A is better. The resampling tests use add-one smoothing, so
their p-values are never exactly zero.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import partial
from typing import Optional, Union

import numpy as np
from scipy import special, stats

from ._parallel import chunk_sizes, ordered_map
from .errors import (
    AllZeroDifferences,
    DegenerateRanks,
    DomainError,
    PairLengthMismatch,
    ZeroVariance,
)
from .rng import RngStream
from .samples import SampleLike, as_sample

RESAMPLE_CHUNK = 250
MIN_RESAMPLES = 100

SeedLike = Union[int, RngStream]


@dataclass(frozen=True)
class PValueResult:
    statistic: float
    p_value: float
    num_resamples: int = 0
    seed: Optional[int] = None

    def significant(self, alpha: float = 0.05) -> bool:
        return self.p_value <= alpha

    def to_dict(self) -> dict:
        return asdict(self)


def _stream(seed: SeedLike) -> RngStream:
    return seed if isinstance(seed, RngStream) else RngStream(seed)


def _seed_label(seed: SeedLike) -> int:
    # report the seed as given; substreams are summarised by a derived seed
    return seed.derive_seed() if isinstance(seed, RngStream) else int(seed)


def _tie_tolerance(*arrays: np.ndarray) -> float:
    # means computed in different summation orders may differ by a few ulps
    scale = max(1.0, max(float(np.abs(x).max()) for x in arrays))
    return 64 * np.finfo(np.float64).eps * scale


def _check_resamples(num_resamples: int):
    if num_resamples < MIN_RESAMPLES:
        raise DomainError(f"need at least {MIN_RESAMPLES} resamples, got {num_resamples}")


def _bootstrap_deltas(a: np.ndarray, b: np.ndarray, stream: RngStream, job: tuple[int, int]) -> np.ndarray:
    index, size = job
    gen = stream.substream(index).generator()
    mean_a = a[gen.integers(0, len(a), (size, len(a)))].mean(axis=1)
    mean_b = b[gen.integers(0, len(b), (size, len(b)))].mean(axis=1)
    return mean_a - mean_b


def bootstrap_test(
    scores_a: SampleLike,
    scores_b: SampleLike,
    num_resamples: int = 1000,
    seed: SeedLike = 1234,
    num_jobs: int = 1,
) -> PValueResult:
    """Bootstrap test on the difference of means.

    Both samples are resampled with replacement. The bootstrap differences
    centre on the observed difference, so a replicate counts as at least as
    extreme when it reaches twice the observed difference.
    """
    _check_resamples(num_resamples)
    a, b = as_sample(scores_a).values, as_sample(scores_b).values
    stream = _stream(seed)
    delta = float(a.mean() - b.mean())
    jobs = list(enumerate(chunk_sizes(num_resamples, RESAMPLE_CHUNK)))
    deltas = np.concatenate(ordered_map(partial(_bootstrap_deltas, a, b, stream), jobs, num_jobs))
    hits = int(np.count_nonzero(deltas >= 2 * delta - _tie_tolerance(a, b)))
    return PValueResult(delta, (hits + 1) / (num_resamples + 1), num_resamples, _seed_label(seed))


def _permuted_deltas(pooled: np.ndarray, n: int, stream: RngStream, job: tuple[int, int]) -> np.ndarray:
    index, size = job
    gen = stream.substream(index).generator()
    order = np.argsort(gen.random((size, len(pooled))), axis=1)
    shuffled = pooled[order]
    return shuffled[:, :n].mean(axis=1) - shuffled[:, n:].mean(axis=1)


def permutation_test(
    scores_a: SampleLike,
    scores_b: SampleLike,
    num_resamples: int = 1000,
    seed: SeedLike = 1234,
    num_jobs: int = 1,
) -> PValueResult:
    """Permutation-randomisation test on the difference of means.

    Each replicate shuffles the pooled scores into groups of the original
    sizes and counts differences at least as large as the observed one.
    """
    _check_resamples(num_resamples)
    a, b = as_sample(scores_a).values, as_sample(scores_b).values
    stream = _stream(seed)
    pooled = np.concatenate([a, b])
    delta = float(a.mean() - b.mean())
    jobs = list(enumerate(chunk_sizes(num_resamples, RESAMPLE_CHUNK)))
    deltas = np.concatenate(ordered_map(partial(_permuted_deltas, pooled, len(a), stream), jobs, num_jobs))
    hits = int(np.count_nonzero(deltas >= delta - _tie_tolerance(pooled)))
    return PValueResult(delta, (hits + 1) / (num_resamples + 1), num_resamples, _seed_label(seed))


def student_t_one_sided(scores_a: SampleLike, scores_b: SampleLike) -> PValueResult:
    """Welch's unequal-variance t-test, alternative ``mean(A) > mean(B)``."""
    a, b = as_sample(scores_a).values, as_sample(scores_b).values
    n, m = len(a), len(b)
    if n < 2 or m < 2:
        raise DomainError("the t-test needs at least two scores per sample")
    va, vb = a.var(ddof=1) / n, b.var(ddof=1) / m
    se2 = va + vb
    if se2 == 0.0:
        raise ZeroVariance("both samples are constant; the t statistic is undefined")
    t = (a.mean() - b.mean()) / np.sqrt(se2)
    # Welch-Satterthwaite in ratio form; squaring tiny variances would underflow
    ra, rb = va / se2, vb / se2
    df = 1.0 / (ra**2 / (n - 1) + rb**2 / (m - 1))
    return PValueResult(float(t), float(stats.t.sf(t, df)))


def _normal_sf(z: float) -> float:
    return float(special.ndtr(-z))


def _tie_sum(ranks: np.ndarray) -> float:
    _, counts = np.unique(ranks, return_counts=True)
    return float(np.sum(counts.astype(np.float64) ** 3 - counts))


def mann_whitney_u(scores_a: SampleLike, scores_b: SampleLike) -> PValueResult:
    """Mann-Whitney U test, alternative "A tends to be larger".

    Normal approximation with midranks, tie-corrected variance and a 0.5
    continuity correction.
    """
    a, b = as_sample(scores_a).values, as_sample(scores_b).values
    n, m = len(a), len(b)
    if n < 2 or m < 2:
        raise DomainError("the Mann-Whitney U test needs at least two scores per sample")
    ranks = stats.rankdata(np.concatenate([a, b]))
    u = float(ranks[:n].sum() - n * (n + 1) / 2)
    total = n + m
    var = n * m / 12 * ((total + 1) - _tie_sum(ranks) / (total * (total - 1)))
    if var <= 0.0:
        raise DegenerateRanks("all pooled scores are identical")
    z = (u - n * m / 2 - 0.5) / np.sqrt(var)
    return PValueResult(u, _normal_sf(z))


def wilcoxon_signed_rank(scores_a: SampleLike, scores_b: SampleLike) -> PValueResult:
    """Wilcoxon signed-rank test on positionally paired scores.

    Pairs are formed from the scores in the order they were given (the
    ``raw`` order of a :class:`~scoresig.samples.ScoreSample`). Zero
    differences are dropped, tied magnitudes get midranks, and the p-value
    uses the normal approximation with tie and continuity corrections.
    """
    a, b = as_sample(scores_a).raw, as_sample(scores_b).raw
    if len(a) != len(b):
        raise PairLengthMismatch(f"paired test needs equal sizes, got {len(a)} and {len(b)}")
    if len(a) < 5:
        raise DomainError(f"the signed-rank test needs at least 5 pairs, got {len(a)}")
    diff = a - b
    diff = diff[diff != 0.0]
    if diff.size == 0:
        raise AllZeroDifferences("every pair is tied")
    k = diff.size
    ranks = stats.rankdata(np.abs(diff))
    w = float(ranks[diff > 0].sum())
    var = k * (k + 1) * (2 * k + 1) / 24 - _tie_sum(ranks) / 48
    z = (w - k * (k + 1) / 4 - 0.5) / np.sqrt(var)
    return PValueResult(w, _normal_sf(z))
