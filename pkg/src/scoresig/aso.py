"""Almost Stochastic Order (ASO) test.

``aso(a, b)`` asks whether the scores in ``a`` are almost stochastically
larger than those in ``b``. The result's ``eps_min`` is a one-sided
``1 - alpha`` upper confidence bound on the violation ratio: the share of
squared quantile distance where ``a``'s quantile function lies *below*
``b``'s. Small ``eps_min`` (below a threshold ``tau`` such as 0.2) means
``a`` is better than ``b``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, replace
from functools import partial
from typing import Mapping, Sequence, Union

import numpy as np

from ._parallel import chunk_sizes, ordered_map
from .errors import ConfigError, DomainError, DuplicateName
from .rng import derive_seed, derive_stream
from .samples import SampleLike, ScoreSample, as_sample, quantile_indices, std_normal_quantile

# w2_squared at or below this is treated as "identical quantile functions"
DEGENERATE_W2 = 1e-12
# bootstrap iterations per random substream; fixed so results ignore num_jobs
BOOTSTRAP_CHUNK = 100


def integration_grid(dt: float) -> np.ndarray:
    """Points ``dt, 2dt, ...`` strictly inside (0, 1)."""
    t = np.arange(dt, 1.0, dt)
    return t[t < 1.0]


@dataclass(frozen=True)
class AsoConfig:
    """Parameters of one ASO run.

    Attributes
    ----------
    alpha : float
        Significance level; the bound holds with confidence ``1 - alpha``.
    num_bootstrap : int
        Bootstrap iterations used to estimate the variance of the violation ratio.
    dt : float
        Step of the Riemann grid the quantile integrals are evaluated on.
    seed : int
        Master seed for the bootstrap.
    num_jobs : int
        Worker threads for the bootstrap. Has no effect on results.
    """

    alpha: float = 0.05
    num_bootstrap: int = 1000
    dt: float = 0.005
    seed: int = 1234
    num_jobs: int = 1

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.num_bootstrap < 1:
            raise ConfigError(f"num_bootstrap must be positive, got {self.num_bootstrap}")
        if not 0.0 < self.dt < 0.5 or len(integration_grid(self.dt)) < 3:
            raise ConfigError(f"dt must give at least 3 grid points in (0, 1), got {self.dt}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.num_jobs < 1:
            raise ConfigError(f"num_jobs must be positive, got {self.num_jobs}")


@dataclass(frozen=True)
class AsoResult:
    eps_min: float
    violation_ratio: float
    sigma_hat: float
    n: int
    m: int
    config: AsoConfig
    w2_squared: float = field(default=0.0)

    def rejects(self, tau: float) -> bool:
        """True when the null "a is not better than b" is rejected at ``tau``."""
        return self.eps_min < tau

    def to_dict(self) -> dict:
        data = asdict(self)
        # execution detail; results do not depend on it
        del data["config"]["num_jobs"]
        return data


def _batched_violation_ratios(sorted_a: np.ndarray, sorted_b: np.ndarray, dt: float):
    """Violation ratio and squared W2 for rows of pre-sorted score arrays."""
    t = integration_grid(dt)
    f = sorted_a[..., quantile_indices(sorted_a.shape[-1], t)]
    g = sorted_b[..., quantile_indices(sorted_b.shape[-1], t)]
    squared = (g - f) ** 2 * dt
    w2_squared = squared.sum(axis=-1)
    violated = np.where(f < g, squared, 0.0).sum(axis=-1)
    degenerate = w2_squared <= DEGENERATE_W2
    ratio = np.where(degenerate, 0.5, violated / np.where(degenerate, 1.0, w2_squared))
    return ratio, w2_squared


def compute_violation_ratio(a: SampleLike, b: SampleLike, dt: float = 0.005) -> tuple[float, float]:
    """Violation ratio of "a dominates b" and the squared 2-Wasserstein distance.

    Both integrals are Riemann sums over :func:`integration_grid`. Grid
    points where ``a``'s quantile is at least ``b``'s contribute nothing to
    the numerator. When the quantile functions coincide (``w2_squared`` at
    most ``1e-12``) the ratio is 0.5: no evidence for either order.
    """
    a, b = as_sample(a), as_sample(b)
    ratio, w2_squared = _batched_violation_ratios(a.values, b.values, dt)
    return float(ratio), float(w2_squared)


def _bootstrap_chunk(a: ScoreSample, b: ScoreSample, config: AsoConfig, job: tuple[int, int]) -> np.ndarray:
    index, size = job
    gen = derive_stream(config.seed, index).generator()
    ia = np.sort(quantile_indices(a.n, gen.random((size, a.n))), axis=1)
    ib = np.sort(quantile_indices(b.n, gen.random((size, b.n))), axis=1)
    ratios, _ = _batched_violation_ratios(a.values[ia], b.values[ib], config.dt)
    return ratios


def bootstrap_violation_ratios(a: SampleLike, b: SampleLike, config: AsoConfig) -> np.ndarray:
    """Violation ratios of ``config.num_bootstrap`` inverse-transform resamples."""
    a, b = as_sample(a), as_sample(b)
    jobs = list(enumerate(chunk_sizes(config.num_bootstrap, BOOTSTRAP_CHUNK)))
    parts = ordered_map(partial(_bootstrap_chunk, a, b, config), jobs, config.num_jobs)
    return np.concatenate(parts)


def sigma_from_bootstrap(ratios: Sequence[float], observed_ratio: float, n: int, m: int) -> float:
    """Standard deviation of the rescaled bootstrap deviations (divides by B)."""
    scaled = math.sqrt(n * m / (n + m)) * (np.asarray(ratios, dtype=np.float64) - observed_ratio)
    return float(np.sqrt(np.var(scaled)))


def bootstrap_sigma(a: SampleLike, b: SampleLike, observed_ratio: float, config: AsoConfig) -> float:
    a, b = as_sample(a), as_sample(b)
    return sigma_from_bootstrap(bootstrap_violation_ratios(a, b, config), observed_ratio, a.n, b.n)


def eps_min_bound(violation_ratio: float, sigma_hat: float, n: int, m: int, alpha: float) -> float:
    """Upper confidence bound on the violation ratio, clamped to [0, 1]."""
    bound = violation_ratio - math.sqrt((n + m) / (n * m)) * sigma_hat * std_normal_quantile(alpha)
    return min(max(bound, 0.0), 1.0)


def aso(scores_a: SampleLike, scores_b: SampleLike, config: AsoConfig | None = None, **overrides) -> AsoResult:
    """Run the ASO test of "A is better than B".

    Parameters
    ----------
    scores_a, scores_b : array_like or ScoreSample
        Scores of algorithms A and B; higher is better.
    config : AsoConfig, optional
        Test parameters. Keyword ``overrides`` replace individual fields,
        e.g. ``aso(a, b, alpha=0.01, seed=7)``.

    Returns
    -------
    AsoResult
        Reject "A is not better than B" when ``result.eps_min < tau``.
    """
    config = replace(config or AsoConfig(), **overrides)
    a, b = as_sample(scores_a), as_sample(scores_b)
    ratio, w2_squared = compute_violation_ratio(a, b, config.dt)
    sigma = bootstrap_sigma(a, b, ratio, config)
    return AsoResult(
        eps_min=eps_min_bound(ratio, sigma, a.n, b.n, config.alpha),
        violation_ratio=ratio,
        sigma_hat=sigma,
        n=a.n,
        m=b.n,
        config=config,
        w2_squared=w2_squared,
    )


@dataclass(frozen=True)
class ComparisonTable:
    """Pairwise ASO results; row ``i``, column ``j`` tests "i better than j"."""

    names: list[str]
    eps_min: np.ndarray
    violation_ratio: np.ndarray
    corrected_alpha: float
    correction: str

    def to_dict(self) -> dict:
        return {
            "names": list(self.names),
            "eps_min": self.eps_min.tolist(),
            "violation_ratio": self.violation_ratio.tolist(),
            "corrected_alpha": self.corrected_alpha,
            "correction": self.correction,
        }

    def to_latex(self, digits: int = 3) -> str:
        k = len(self.names)
        lines = [
            r"\begin{tabular}{l" + "r" * k + "}",
            r"\toprule",
            " & " + " & ".join(self.names) + r" \\",
            r"\midrule",
        ]
        for name, row in zip(self.names, self.eps_min):
            lines.append(name + " & " + " & ".join(f"{v:.{digits}f}" for v in row) + r" \\")
        lines += [r"\bottomrule", r"\end{tabular}"]
        return "\n".join(lines) + "\n"


def _named_groups(groups) -> list[tuple[str, SampleLike]]:
    pairs = list(groups.items()) if isinstance(groups, Mapping) else [tuple(p) for p in groups]
    seen = set()
    for name, _ in pairs:
        if name in seen:
            raise DuplicateName(f"group name {name!r} appears more than once")
        seen.add(name)
    return pairs


def multi_aso(
    groups: Union[Mapping[str, SampleLike], Sequence[tuple[str, SampleLike]]],
    config: AsoConfig | None = None,
    use_bonferroni: bool = True,
    num_comparisons: int | None = None,
) -> ComparisonTable:
    """ASO for every ordered pair of groups.

    With ``use_bonferroni`` the level is divided by ``num_comparisons``,
    which defaults to ``k * (k - 1)`` because both directions of every pair
    are tested. Pair ``p`` (row-major over off-diagonal cells) is seeded
    with ``derive_seed(config.seed, p)``.
    """
    config = config or AsoConfig()
    pairs = _named_groups(groups)
    k = len(pairs)
    if k < 2:
        raise DomainError("multi_aso needs at least two groups")
    names = [name for name, _ in pairs]
    samples = [as_sample(scores) for _, scores in pairs]

    if use_bonferroni:
        divisor = k * (k - 1) if num_comparisons is None else num_comparisons
        if divisor < 1:
            raise ConfigError(f"num_comparisons must be positive, got {divisor}")
        alpha = config.alpha / divisor
    else:
        alpha = config.alpha

    eps = np.ones((k, k))
    ratios = np.full((k, k), np.nan)
    pair_index = 0
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            pair_config = replace(config, alpha=alpha, seed=derive_seed(config.seed, pair_index))
            result = aso(samples[i], samples[j], pair_config)
            eps[i, j] = result.eps_min
            ratios[i, j] = result.violation_ratio
            pair_index += 1

    return ComparisonTable(
        names=names,
        eps_min=eps,
        violation_ratio=ratios,
        corrected_alpha=alpha,
        correction="bonferroni" if use_bonferroni else "none",
    )


def bonferroni_correction(p_values: Sequence[float]) -> list[float]:
    """Scale each p-value by the number of comparisons, capped at 1."""
    p = np.asarray(p_values, dtype=np.float64)
    if p.size and (np.any(~np.isfinite(p)) or p.min() < 0.0 or p.max() > 1.0):
        raise DomainError("p-values must lie in [0, 1]")
    return np.minimum(1.0, p * len(p)).tolist()
