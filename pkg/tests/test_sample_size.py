import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from scoresig import PowerConfig, aso_uncertainty_reduction, bootstrap_power_analysis
from scoresig.errors import ConfigError, DomainError

sizes = st.integers(1, 500)


def test_uncertainty_examples():
    assert round(aso_uncertainty_reduction(5, 5, 10, 10), 3) == 1.414
    assert round(aso_uncertainty_reduction(5, 5, 15, 15), 3) == 1.732
    assert aso_uncertainty_reduction(7, 3, 7, 3) == 1.0


def test_uncertainty_uneven_sizes():
    # rate factors 4*12/16 = 3 and 2*6/8 = 1.5
    assert aso_uncertainty_reduction(2, 6, 4, 12) == pytest.approx(math.sqrt(2))


@given(sizes, sizes, sizes, sizes, st.integers(1, 50))
def test_uncertainty_monotone(m0, n0, m1, n1, extra):
    base = aso_uncertainty_reduction(m0, n0, m1, n1)
    assert aso_uncertainty_reduction(m0, n0, m1 + extra, n1) >= base
    assert aso_uncertainty_reduction(m0, n0, m1, n1 + extra) >= base


@given(sizes, sizes, sizes, sizes, sizes, sizes)
def test_uncertainty_transitive(a, b, c, d, e, f):
    chained = aso_uncertainty_reduction(a, b, c, d) * aso_uncertainty_reduction(c, d, e, f)
    assert chained == pytest.approx(aso_uncertainty_reduction(a, b, e, f), rel=1e-12)


@pytest.mark.parametrize("args", [(0, 5, 5, 5), (5, 5, -1, 5)])
def test_uncertainty_domain(args):
    with pytest.raises(DomainError):
        aso_uncertainty_reduction(*args)


def test_power_constant_sample_is_one():
    assert bootstrap_power_analysis([5, 5, 5, 5, 5], num_bootstrap=100, num_test_resamples=200) == 1.0


def test_power_without_lift_is_small():
    rng = np.random.default_rng(4)
    power = bootstrap_power_analysis(rng.normal(10, 2, 20), lift=1.0, num_bootstrap=200, num_test_resamples=200)
    assert power <= 0.15


def test_power_noisy_sample_is_low():
    rng = np.random.default_rng(6)
    scores = rng.normal(1, 10, 5)
    assert bootstrap_power_analysis(scores, num_bootstrap=200, num_test_resamples=200) < 0.8


def test_power_deterministic_and_order_free():
    rng = np.random.default_rng(7)
    scores = rng.normal(5, 1, 12)
    config = PowerConfig(num_bootstrap=120, num_test_resamples=200, seed=3)
    first = bootstrap_power_analysis(scores, config)
    assert first == bootstrap_power_analysis(scores[::-1], config)
    assert first == bootstrap_power_analysis(scores, config, num_jobs=3)
    assert 0.0 <= first <= 1.0


def test_power_permutation_and_additive():
    rng = np.random.default_rng(8)
    scores = rng.normal(-1, 0.5, 10)
    # a multiplicative lift makes negative scores worse; an additive one helps
    worse = bootstrap_power_analysis(scores, lift=1.25, num_bootstrap=100, num_test_resamples=200, test="permutation")
    better = bootstrap_power_analysis(scores, lift=0.5, additive=True, num_bootstrap=100, num_test_resamples=200)
    assert worse < 0.1 < better


@pytest.mark.parametrize("kwargs", [dict(lift=0.0), dict(alpha=1.5), dict(test="t"), dict(num_bootstrap=0)])
def test_power_config_validation(kwargs):
    with pytest.raises(ConfigError):
        PowerConfig(**kwargs)


def test_power_needs_two_scores():
    with pytest.raises(DomainError):
        bootstrap_power_analysis([1.0])
