"""Revival structure extracted from sampled autocorrelations.

Peak picking, p/q labeling of peak times against a revival time, beat
frequencies from a periodogram, and the rational bookkeeping needed to make
two revival times commensurate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .dynamics import ComplexSeries
from .errors import InconsistencyError

__all__ = [
    "Rational",
    "RevivalEvent",
    "BeatReport",
    "detect_revivals",
    "label_fraction",
    "best_fraction",
    "periodogram_beats",
    "commensurate",
    "tune_box_ratio",
    "common_revival",
]

# Reduced p/q with q > 0; Fraction normalizes on construction.
Rational = Fraction

# A peak must exceed both neighbours by more than this; |A|^2 of a stationary
# state fluctuates at the ulp level and must not produce events.
PEAK_TOLERANCE = 1e-12


@dataclass(frozen=True)
class RevivalEvent:
    t: float
    height: float
    fraction: Optional[Fraction] = None
    residual: Optional[float] = None


@dataclass(frozen=True)
class BeatReport:
    """Spectral peaks of |A|^2 as (frequency, power), strongest first."""

    frequencies: list = field(default_factory=list)
    bin_width: float = 0.0
    nyquist: float = 0.0

    @property
    def peak_frequencies(self):
        return [f for f, _ in self.frequencies]


def best_fraction(x: float, q_max: int) -> tuple[Fraction, float]:
    """Reduced p/q (q <= q_max, p >= 0) closest to ``x``, ties to smaller q then smaller p."""
    if q_max < 1:
        raise ValueError(f"q_max must be >= 1, got {q_max}")
    best = None
    for q in range(1, q_max + 1):
        base = math.floor(x * q)
        for p in (base, base + 1):
            if p < 0:
                continue
            key = (abs(x - p / q), q, p)
            if best is None or key < best:
                best = key
    residual, q, p = best
    return Fraction(p, q), residual


def label_fraction(t: float, t_rev: float, q_max: int = 10, tol: float = 0.01) -> Optional[Fraction]:
    """Fraction p/q of ``t_rev`` nearest to ``t``, or None if it misses by more than ``tol``.

    >>> label_fraction(4.18879, 12.56637, 8, 0.01)
    Fraction(1, 3)
    """
    if not t_rev > 0:
        raise ValueError(f"t_rev must be positive, got {t_rev}")
    frac, residual = best_fraction(t / t_rev, q_max)
    return frac if residual <= tol else None


def detect_revivals(
    series: ComplexSeries,
    min_height: float = 0.5,
    min_separation: Optional[float] = None,
    *,
    t_rev: Optional[float] = None,
    q_max: int = 10,
    tol: float = 0.01,
) -> list[RevivalEvent]:
    """Strict interior local maxima of |A|^2 above ``min_height``.

    "Strict" means higher than both neighbours by more than ``PEAK_TOLERANCE``.

    Candidates are accepted tallest first and discarded when closer than
    ``min_separation`` (default: one grid step) to an accepted peak. With
    ``t_rev`` given, each event is labeled by :func:`label_fraction`.
    Returns events sorted by time.
    """
    spacing = series.grid.spacing
    if min_separation is None:
        min_separation = spacing
    elif min_separation < spacing * (1 - 1e-12):
        raise ValueError(f"min_separation {min_separation} is below the grid spacing {spacing}")

    h = series.abs2
    t = series.times
    if h.size < 3:
        return []
    mid = h[1:-1]
    strict = (mid - h[:-2] > PEAK_TOLERANCE) & (mid - h[2:] > PEAK_TOLERANCE)
    interior = np.flatnonzero(strict & (mid >= min_height)) + 1
    # tallest first; equal heights resolved by earlier time
    order = sorted(interior.tolist(), key=lambda k: (-h[k], k))
    kept: list[int] = []
    for k in order:
        if all(abs(t[k] - t[j]) >= min_separation for j in kept):
            kept.append(k)

    events = []
    for k in sorted(kept):
        frac = residual = None
        if t_rev is not None:
            best, res = best_fraction(t[k] / t_rev, q_max)
            if res <= tol:
                frac, residual = best, res
        events.append(RevivalEvent(float(t[k]), float(h[k]), frac, residual))
    return events


def periodogram_beats(series: ComplexSeries, top_k: int = 4) -> BeatReport:
    """Dominant frequencies (cycles per unit time) in the mean-subtracted |A|^2.

    Peaks are local maxima of the one-sided power spectrum refined by a
    parabola through the peak bin and its neighbours.
    """
    if len(series) < 8:
        raise ValueError(f"need at least 8 samples for a periodogram, got {len(series)}")
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    y = series.abs2
    y = y - y.mean()
    n = y.size
    dt = series.grid.spacing
    power = np.abs(np.fft.rfft(y)) ** 2
    bin_width = 1.0 / (n * dt)
    nyquist = 0.5 / dt

    peaks = []
    for k in range(1, power.size - 1):
        a, b, c = power[k - 1], power[k], power[k + 1]
        if b > a and b >= c:
            denom = a - 2.0 * b + c
            delta = 0.5 * (a - c) / denom if denom != 0 else 0.0
            freq = min(max((k + delta) * bin_width, 0.0), nyquist)
            peaks.append((float(freq), float(b - 0.25 * (a - c) * delta)))
    peaks.sort(key=lambda fp: -fp[1])
    return BeatReport(peaks[:top_k], bin_width=bin_width, nyquist=nyquist)


def commensurate(t1: float, t2: float, q_max: int = 10, tol: float = 1e-9) -> Optional[Fraction]:
    """Rational p/q approximating ``t1/t2``, or None if no close enough fraction exists.

    The ratio is approximated in whichever orientation is >= 1, with the
    denominator there bounded by ``q_max``, and the result inverted when
    needed. This makes ``commensurate(t1, t2)`` and ``commensurate(t2, t1)``
    exact reciprocals.
    """
    if not (t1 > 0 and t2 > 0):
        raise ValueError("times must be positive")
    flipped = t1 < t2
    big, small = (t2, t1) if flipped else (t1, t2)
    ratio = big / small
    approx = Fraction(ratio).limit_denominator(q_max)
    if abs(ratio - approx.numerator / approx.denominator) > tol:
        return None
    return 1 / approx if flipped else approx


def tune_box_ratio(target: Fraction) -> float:
    """Side ratio L1/L2 that makes t_rev,1 / t_rev,2 = p/q for a rectangular box."""
    target = Fraction(target)
    if target.numerator < 1:
        raise ValueError(f"target ratio must be positive, got {target}")
    return math.sqrt(target.numerator / target.denominator)


def common_revival(t1: float, t2: float, ratio: Fraction) -> float:
    """Joint full-revival time q*t1 (= p*t2) of two commensurate periods."""
    ratio = Fraction(ratio)
    p, q = ratio.numerator, ratio.denominator
    residual = abs(t1 / t2 - p / q) / (p / q) if p else math.inf
    if residual > 1e-9:
        raise InconsistencyError(
            f"t1/t2 = {t1 / t2!r} is not {p}/{q} (relative residual {residual:.3e})", residual
        )
    return q * t1
