"""Score samples, the empirical quantile function and resampling."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np
from scipy import special

from .errors import DomainError, EmptySample, NonFiniteScore
from .rng import RngStream


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScoreSample:
    """Sorted, immutable scores of one algorithm.

    ``values`` is ascending. ``raw`` keeps the scores in the order they were
    supplied, which paired tests need; every other operation only looks at
    ``values``.
    """

    values: np.ndarray
    raw: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other):
        if not isinstance(other, ScoreSample):
            return NotImplemented
        return np.array_equal(self.values, other.values) and np.array_equal(self.raw, other.raw)

    __hash__ = None


SampleLike = Union[ScoreSample, Iterable[float], np.ndarray]


def make_sample(raw: Iterable[float]) -> ScoreSample:
    """Validate ``raw`` and build a sorted :class:`ScoreSample`.

    Raises
    ------
    EmptySample
        If ``raw`` has no elements.
    NonFiniteScore
        If any element is NaN or infinite. Such scores are rejected rather
        than dropped so that sample sizes stay honest.
    """
    try:
        array = np.array(raw, dtype=np.float64).ravel()
    except (TypeError, ValueError) as exc:
        raise NonFiniteScore(f"scores must be real numbers: {exc}") from None
    if array.size == 0:
        raise EmptySample("a score sample needs at least one value")
    bad = ~np.isfinite(array)
    if bad.any():
        position = int(np.argmax(bad))
        raise NonFiniteScore(f"score at position {position} is not finite: {array[position]}")
    return ScoreSample(values=_frozen(np.sort(array, kind="stable")), raw=_frozen(array))


def as_sample(scores: SampleLike) -> ScoreSample:
    """Return ``scores`` unchanged if already a sample, else build one."""
    if isinstance(scores, ScoreSample):
        return scores
    return make_sample(scores)


def quantile_indices(n: int, p: np.ndarray) -> np.ndarray:
    """0-based positions in a sorted sample of size ``n`` for quantile levels ``p``.

    Uses ``ceil(n * p)`` as a 1-based rank, clamped to ``[1, n]``. This is a
    left-continuous step function with no interpolation.
    """
    ranks = np.ceil(n * np.asarray(p, dtype=np.float64)).astype(np.int64)
    return np.clip(ranks - 1, 0, n - 1)


def empirical_quantile(sample: SampleLike, p: float) -> float:
    """Empirical quantile of ``sample`` at level ``p`` in [0, 1]."""
    sample = as_sample(sample)
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"quantile level must lie in [0, 1], got {p}")
    return float(sample.values[quantile_indices(sample.n, p)])


def resample_indices(n: int, shape, generator: np.random.Generator) -> np.ndarray:
    """Inverse-transform draws: uniform levels mapped to sorted positions."""
    return quantile_indices(n, generator.random(shape))


def inverse_transform_resample(sample: SampleLike, size: int, rng: RngStream) -> ScoreSample:
    """Draw ``size`` scores from the empirical distribution of ``sample``.

    Each draw pushes a uniform variate through the empirical quantile
    function, so results are elements of ``sample`` and are fully
    determined by ``rng``.
    """
    sample = as_sample(sample)
    if size < 1:
        raise DomainError(f"resample size must be positive, got {size}")
    drawn = sample.values[resample_indices(sample.n, size, rng.generator())]
    return make_sample(drawn)


def std_normal_quantile(q: float) -> float:
    """Inverse of the standard normal CDF on the open interval (0, 1)."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"normal quantile needs 0 < q < 1, got {q}")
    return float(special.ndtri(q))
