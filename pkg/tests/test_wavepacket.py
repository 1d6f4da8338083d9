import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from revival_lab import (
    Coefficients,
    Coefficients2D,
    PacketSpec,
    TruncationWarning,
    gaussian_coefficients,
    packet_moments,
    product_coefficients_2d,
)
from helpers import quiet_gaussian


def test_delta_limit():
    c = gaussian_coefficients(PacketSpec(10, 1e-9, 1, 30))
    amps = dict(c.entries())
    assert amps[10] == 1.0
    assert all(a == 0 for n, a in amps.items() if n != 10)


def test_gaussian_symmetric_about_integer_mean():
    with pytest.warns(TruncationWarning):
        c = gaussian_coefficients(PacketSpec(10, 2.0, 1, 30))
    amps = dict(c.entries())
    for k in range(10):
        assert amps[10 + k] == amps[10 - k]


def test_gaussian_normalization_independent_sum():
    # n >= 1 clips ~6e-11 of the lower tail, so the warning is expected
    with pytest.warns(TruncationWarning):
        c = gaussian_coefficients(PacketSpec(10, 1.5, 1, 30))
    assert abs(math.fsum(abs(a) ** 2 for _, a in c.entries()) - 1.0) < 1e-12


def test_truncation_warning_carries_tail_mass():
    with pytest.warns(TruncationWarning) as record:
        gaussian_coefficients(PacketSpec(10, 3.0, 5, 15))
    tail = record[0].message.tail_mass
    # oracle: discrete Gaussian weight outside [5, 15] over a wide window
    n = np.arange(-200, 220)
    w = np.exp(-((n - 10) ** 2) / 18.0)
    expected = w[(n < 5) | (n > 15)].sum() / w.sum()
    assert tail == pytest.approx(expected, rel=1e-9)


def test_no_warning_for_wide_support(recwarn):
    gaussian_coefficients(PacketSpec.around(40, 2.0, floor=1))
    assert not [w for w in recwarn if issubclass(w.category, TruncationWarning)]


@pytest.mark.parametrize(
    "args",
    [(10, 0.0, 1, 30), (10, -1.0, 1, 30), (10, 1.0, 12, 30), (10, 1.0, 1, 8), (10, 1.0, 5, 4)],
)
def test_invalid_specs(args):
    with pytest.raises(ValueError):
        PacketSpec(*args)


def test_coefficients_invariants():
    with pytest.raises(ValueError):
        Coefficients([1, 1], [0.6, 0.8])
    with pytest.raises(ValueError):
        Coefficients([2, 1], [0.6, 0.8])
    with pytest.raises(ValueError):
        Coefficients([1, 2], [0.6, 0.7])
    with pytest.raises(ValueError):
        Coefficients([], [])
    Coefficients([1, 2], [0.6, 0.8j])


def test_product_delta():
    c = product_coefficients_2d(PacketSpec(10, 1e-9, 1, 30), PacketSpec(7, 1e-9, 1, 30))
    assert c.entries() == [((10, 7), 1.0 + 0j)]


def test_product_normalized_and_marginals():
    s1, s2 = PacketSpec(10, 1.5, 1, 30), PacketSpec(7, 1.1, 1, 20)
    with pytest.warns(TruncationWarning):
        c = product_coefficients_2d(s1, s2)
    assert abs(math.fsum(c.weights) - 1.0) < 1e-12
    c1 = quiet_gaussian(s1)
    marg = {}
    for (n1, _), a in c.entries():
        marg[n1] = marg.get(n1, 0.0) + abs(a) ** 2
    for n1, a in c1.entries():
        assert marg.get(n1, 0.0) == pytest.approx(abs(a) ** 2, abs=1e-12)


def test_product_lexicographic_and_separable():
    s1, s2 = PacketSpec(15, 1.0, 1, 30), PacketSpec(16, 0.8, 1, 30)
    c = product_coefficients_2d(s1, s2)
    keys = [k for k, _ in c.entries()]
    assert keys == sorted(keys)
    c1 = dict(gaussian_coefficients(s1).entries())
    c2 = dict(gaussian_coefficients(s2).entries())
    for (n1, n2), a in c.entries():
        assert a == pytest.approx(c1[n1] * c2[n2], rel=1e-14)


def test_coefficients_2d_order_enforced():
    with pytest.raises(ValueError):
        Coefficients2D([1, 1], [2, 1], [0.6, 0.8])


def test_moments_examples():
    assert packet_moments(Coefficients.single(10)) == (10.0, 0.0)
    assert packet_moments(Coefficients([9, 11], [2**-0.5, 2**-0.5])) == pytest.approx((10.0, 1.0), rel=1e-14)
    c = gaussian_coefficients(PacketSpec.around(10, 2.0, floor=-100))
    mean = math.fsum(n * abs(a) ** 2 for n, a in c.entries())
    assert packet_moments(c)[0] == pytest.approx(10.0, abs=1e-9)
    assert mean == pytest.approx(10.0, abs=1e-9)


@given(
    st.floats(min_value=5.0, max_value=200.0),
    st.floats(min_value=0.05, max_value=6.0),
)
def test_gaussian_properties(nbar, sigma):
    spec = PacketSpec.around(nbar, sigma, width=10.0, floor=-(10**6))
    c = gaussian_coefficients(spec)
    w = c.weights
    assert abs(math.fsum(w) - 1.0) < 1e-12
    amps = np.abs(c.amps)
    below = c.ns <= nbar
    # non-increasing moving away from nbar on each side
    assert np.all(np.diff(amps[below]) >= 0)
    assert np.all(np.diff(amps[~below]) <= 0)
    if sigma >= 1:
        _, std = packet_moments(c)
        assert 0.8 * sigma < std < 1.2 * sigma


@given(st.integers(min_value=10, max_value=100), st.floats(min_value=0.3, max_value=3.0))
def test_exact_symmetry_integer_mean(nbar, sigma):
    c = dict(quiet_gaussian(PacketSpec(nbar, sigma, nbar - 9, nbar + 9)).entries())
    for k in range(10):
        assert c[nbar + k] == c[nbar - k]
