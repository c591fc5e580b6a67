import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scoresig import RngStream, empirical_quantile, inverse_transform_resample, make_sample, std_normal_quantile
from scoresig.errors import DomainError, EmptySample, NonFiniteScore

finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
samples = st.lists(finite, min_size=1, max_size=40)


def test_make_sample_sorts_and_keeps_raw_order():
    s = make_sample([3.0, 1.0, 2.0])
    assert s.values.tolist() == [1.0, 2.0, 3.0]
    assert s.raw.tolist() == [3.0, 1.0, 2.0]
    assert s.n == 3
    with pytest.raises(ValueError):
        s.values[0] = 9.0


@pytest.mark.parametrize("bad", [[1.0, float("nan")], [float("inf")], [-math.inf, 2.0]])
def test_make_sample_rejects_non_finite(bad):
    with pytest.raises(NonFiniteScore):
        make_sample(bad)


def test_make_sample_rejects_empty():
    with pytest.raises(EmptySample):
        make_sample([])


def test_quantile_examples():
    s = make_sample([1, 2, 3, 4])
    assert empirical_quantile(s, 0.5) == 2
    assert empirical_quantile(s, 0.51) == 3
    assert empirical_quantile(s, 0.0) == 1
    assert empirical_quantile(s, 1.0) == 4
    assert empirical_quantile([5.0], 0.3) == 5.0


@pytest.mark.parametrize("p", [-0.01, 1.01, float("nan")])
def test_quantile_domain(p):
    with pytest.raises(DomainError):
        empirical_quantile([1.0, 2.0], p)


@given(samples, st.lists(st.floats(0, 1), min_size=2, max_size=20))
def test_quantile_monotone_and_in_sample(raw, ps):
    s = make_sample(raw)
    qs = [empirical_quantile(s, p) for p in sorted(ps)]
    assert qs == sorted(qs)
    assert all(q in s.values for q in qs)


# for n <= 24 every n * (i / n) rounds back to exactly i
@given(st.lists(finite, min_size=1, max_size=24, unique=True))
def test_quantile_round_trip(raw):
    s = make_sample(raw)
    n = s.n
    for i in range(1, n + 1):
        assert empirical_quantile(s, i / n) == s.values[i - 1]


def test_quantile_follows_float_ceil():
    # 25 * (7 / 25) is 7.000000000000001, so the ceil rule steps to the 8th value
    s = make_sample(range(25))
    assert 25 * (7 / 25) > 7
    assert empirical_quantile(s, 7 / 25) == 7.0


def test_resample_single_atom():
    out = inverse_transform_resample([7.0], 5, RngStream(3))
    assert out.values.tolist() == [7.0] * 5


def test_resample_is_reproducible():
    stream = RngStream(11, 2)
    first = inverse_transform_resample([1, 2, 3], 3, stream)
    second = inverse_transform_resample([1, 2, 3], 3, stream)
    assert first.raw.tolist() == second.raw.tolist()
    assert set(first.values) <= {1.0, 2.0, 3.0}


def test_resample_two_point_frequency():
    # binomial(10000, 1/2): the band is about 6 standard deviations wide
    out = inverse_transform_resample([0.0, 1.0], 10_000, RngStream(5))
    assert 0.47 <= out.values.mean() <= 0.53


def test_resample_rejects_bad_size():
    with pytest.raises(DomainError):
        inverse_transform_resample([1.0], 0, RngStream(1))


def _bisect_normal_quantile(q):
    # independent oracle: solve Phi(x) = q with mpmath at 40 digits
    mpmath.mp.dps = 40
    return float(mpmath.findroot(lambda x: mpmath.ncdf(x) - q, (-10, 10), solver="bisect"))


def test_normal_quantile_values():
    assert std_normal_quantile(0.5) == 0.0
    assert std_normal_quantile(0.05) == pytest.approx(-1.6448536270, abs=1e-9)
    for q in (1e-6, 0.001, 0.025, 0.3, 0.77, 0.999):
        assert std_normal_quantile(q) == pytest.approx(_bisect_normal_quantile(q), abs=1e-9)


@given(st.floats(1e-6, 0.5))
def test_normal_quantile_antisymmetric(q):
    assert std_normal_quantile(q) == pytest.approx(-std_normal_quantile(1 - q), abs=1e-9)


@pytest.mark.parametrize("q", [0.0, 1.0, -0.2, 1.5])
def test_normal_quantile_domain(q):
    with pytest.raises(DomainError):
        std_normal_quantile(q)


@settings(max_examples=50)
@given(samples, st.floats(0.1, 100))
def test_quantile_scales(raw, c):
    s = make_sample(raw)
    scaled = make_sample(np.asarray(raw) * c)
    for p in (0.0, 0.2, 0.5, 0.9):
        assert empirical_quantile(scaled, p) == pytest.approx(c * empirical_quantile(s, p))
