import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from revival_lab import (
    Box1D,
    Box2D,
    Coefficients,
    ComplexSeries,
    InconsistencyError,
    TimeGrid,
    autocorrelation,
    best_fraction,
    commensurate,
    common_revival,
    detect_revivals,
    label_fraction,
    periodogram_beats,
    time_scales,
    time_scales_2d,
    tune_box_ratio,
)


def series_from_heights(heights, t_end=None):
    heights = np.asarray(heights, dtype=float)
    grid = TimeGrid(0.0, float(t_end or heights.size - 1), heights.size)
    return ComplexSeries(grid, np.sqrt(heights))


def exhaustive_fraction(x, q_max):
    """Oracle: enumerate every p/q with q <= q_max near x, reduce, pick by (residual, q, p)."""
    cands = set()
    for q in range(1, q_max + 1):
        for p in range(max(0, int(x * q) - 2), int(x * q) + 3):
            cands.add(Fraction(p, q))
    best = min(cands, key=lambda f: (abs(x - f.numerator / f.denominator), f.denominator, f.numerator))
    return best, abs(x - best.numerator / best.denominator)


# ---------------------------------------------------------------- detection


def test_flat_series_has_no_events():
    s = autocorrelation(Coefficients.single(4), Box1D(), TimeGrid(0, 10, 101))
    assert detect_revivals(s, 0.5) == []


def test_synthetic_two_peaks():
    s = series_from_heights([0, 1, 0, 0.5, 0])
    events = detect_revivals(s, 0.4, s.grid.spacing)
    assert [(e.t, e.height) for e in events] == [(1.0, pytest.approx(1.0)), (3.0, pytest.approx(0.5))]


def test_min_height_filters():
    s = series_from_heights([0, 1, 0, 0.3, 0])
    assert len(detect_revivals(s, 0.4)) == 1


def test_thinning_keeps_taller_peak():
    s = series_from_heights([0, 0.8, 0, 0.9, 0, 0.7, 0, 0, 0, 0.6, 0])
    events = detect_revivals(s, 0.5, min_separation=2.5)
    assert [e.t for e in events] == [3.0, 9.0]


def test_plateau_is_not_a_strict_maximum():
    s = series_from_heights([0, 0.9, 0.9, 0])
    assert detect_revivals(s, 0.5) == []


def test_min_separation_below_spacing_rejected():
    s = series_from_heights([0, 1, 0, 0.5, 0])
    with pytest.raises(ValueError):
        detect_revivals(s, 0.4, 0.5)


def test_box_full_revival_detected(box_coeffs):
    model = Box1D(1.0, math.pi)
    ts = time_scales(model, 10)
    s = autocorrelation(box_coeffs, model, TimeGrid(0.0, 1.05 * ts.t_rev, 4096))
    events = detect_revivals(s, 0.9, ts.t_cl / 2, t_rev=ts.t_rev)
    full = [e for e in events if e.fraction == 1]
    assert len(full) == 1
    assert full[0].t == pytest.approx(ts.t_rev, rel=1e-12)
    assert full[0].height >= 1 - 1e-10


@given(st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=3, max_size=60), st.integers(1, 5))
def test_events_are_strict_local_maxima(heights, sep_steps):
    s = series_from_heights(heights)
    events = detect_revivals(s, 0.2, float(sep_steps))
    h = s.abs2
    t = list(s.times)
    for e in events:
        k = t.index(e.t)
        assert 0 < k < len(h) - 1 and h[k] > h[k - 1] and h[k] > h[k + 1] and h[k] >= 0.2
    times = [e.t for e in events]
    assert times == sorted(times)
    assert all(b - a >= sep_steps for a, b in zip(times, times[1:]))


# ---------------------------------------------------------------- labeling


def test_label_examples():
    assert label_fraction(6.2832, 12.5664, 8, 0.01) == Fraction(1, 2)
    assert label_fraction(4.18879, 12.56637, 8, 0.01) == Fraction(1, 3)
    assert label_fraction(5.0, 12.56637, 4, 0.02) is None


def test_label_residual_example_oracle():
    best, res = exhaustive_fraction(5.0 / 12.56637, 4)
    assert best == Fraction(1, 3) and res == pytest.approx(0.0646, abs=1e-4)


def test_label_tie_breaks_to_smaller_q():
    # equal residuals from 1/4, 2/8: reduced form reported
    assert label_fraction(0.25, 1.0, 10, 0.0) == Fraction(1, 4)
    # 0.75 sits exactly between 1/2 and 1/1; smaller q wins
    assert best_fraction(0.75, 2) == (Fraction(1, 1), 0.25)


@given(st.floats(min_value=0.0, max_value=5.0), st.integers(1, 12))
def test_best_fraction_matches_exhaustive(x, q_max):
    best, res = best_fraction(x, q_max)
    ref, ref_res = exhaustive_fraction(x, q_max)
    assert best == ref and res == ref_res
    assert best.denominator <= q_max and math.gcd(best.numerator, best.denominator) == 1


# ---------------------------------------------------------------- beats


def test_beats_single_cosine():
    g = TimeGrid(0.0, 40.0, 2048)
    T = 1.7
    s = ComplexSeries(g, np.sqrt(0.5 + 0.4 * np.cos(2 * math.pi * g.times / T)))
    rep = periodogram_beats(s, 1)
    assert abs(rep.frequencies[0][0] - 1 / T) < rep.bin_width


def test_beats_two_cosines():
    g = TimeGrid(0.0, 20.0, 4096)
    T1, T2 = 0.6283, 0.3142
    y = 0.5 + 0.2 * np.cos(2 * math.pi * g.times / T1) + 0.2 * np.cos(2 * math.pi * g.times / T2)
    rep = periodogram_beats(ComplexSeries(g, np.sqrt(y)), 2)
    found = sorted(f for f, _ in rep.frequencies)
    assert abs(found[0] - 1 / T1) < rep.bin_width
    assert abs(found[1] - 1 / T2) < rep.bin_width
    assert all(0 <= f <= rep.nyquist for f in found)
    powers = [p for _, p in rep.frequencies]
    assert powers == sorted(powers, reverse=True)


def test_beats_too_short():
    with pytest.raises(ValueError):
        periodogram_beats(series_from_heights([0.1] * 7), 1)


# ---------------------------------------------------------------- commensurability


def test_commensurate_examples():
    assert commensurate(4 * math.pi, 2 * math.pi, 10, 1e-12) == Fraction(2, 1)
    assert commensurate(3.3, 3.3, 10, 1e-12) == Fraction(1, 1)
    assert commensurate(math.sqrt(2), 1.0, 10, 1e-6) is None


def test_sqrt2_best_residual_oracle():
    # oracle: brute force over every p/q, q <= 10
    best = min(
        (abs(math.sqrt(2) - p / q), p, q) for q in range(1, 11) for p in range(0, 31)
    )
    assert best[0] == pytest.approx(0.0142, abs=1e-3)
    assert commensurate(math.sqrt(2), 1.0, 10, 0.015) == Fraction(best[1], best[2])


@given(
    st.floats(min_value=1e-3, max_value=1e3),
    st.floats(min_value=1e-3, max_value=1e3),
    st.integers(1, 20),
    st.sampled_from([1e-9, 1e-4, 1e-2, 0.1]),
)
def test_commensurate_reciprocal(t1, t2, q_max, tol):
    a = commensurate(t1, t2, q_max, tol)
    b = commensurate(t2, t1, q_max, tol)
    assert (a is None) == (b is None)
    if a is not None:
        assert a * b == 1


@given(st.integers(1, 12), st.integers(1, 12), st.floats(min_value=0.1, max_value=100))
def test_commensurate_recovers_exact_ratios(p, q, scale):
    t2 = scale
    t1 = scale * p / q
    assert commensurate(t1, t2, 12, 1e-9 * max(p / q, q / p)) == Fraction(p, q)


def test_tune_examples():
    assert tune_box_ratio(Fraction(1, 1)) == 1.0
    assert tune_box_ratio(Fraction(2, 1)) == pytest.approx(1.4142136, rel=1e-7)
    assert tune_box_ratio(Fraction(9, 4)) == 1.5


@pytest.mark.parametrize("p, q", [(1, 1), (2, 1), (9, 4), (3, 7), (5, 2)])
def test_tune_round_trip(p, q):
    L2 = 1.3
    ts = time_scales_2d(Box2D(1.0, L2 * tune_box_ratio(Fraction(p, q)), L2), 10, 10)
    assert ts.t_rev_1 / ts.t_rev_2 == pytest.approx(p / q, rel=1e-12)


def test_common_revival_examples():
    assert common_revival(4 * math.pi, 2 * math.pi, Fraction(2, 1)) == 4 * math.pi
    assert common_revival(2.5, 2.5, Fraction(1, 1)) == 2.5
    assert common_revival(6.0, 4.0, Fraction(3, 2)) == 12.0


def test_common_revival_inconsistent():
    with pytest.raises(InconsistencyError) as info:
        common_revival(6.0, 4.0, Fraction(2, 1))
    assert info.value.residual == pytest.approx(0.25)
