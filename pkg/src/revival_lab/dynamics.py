"""Exact time evolution of eigenstate superpositions.

Nothing here integrates an equation of motion: each amplitude is rotated by
its eigenphase ``exp(-i E_n t)``. Sums always run over quantum numbers in
ascending (lexicographic, in 2D) order, one term at a time, so results are
bit-reproducible; only the time axis is vectorized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .spectrum import Box1D, SpectrumModel, SpectrumModel2D
from .wavepacket import Coefficients, Coefficients2D

__all__ = [
    "TimeGrid",
    "ComplexSeries",
    "DensityGrid",
    "reduced_phase",
    "autocorrelation",
    "autocorrelation_at",
    "autocorrelation_2d",
    "autocorrelation_2d_at",
    "box_density",
    "carpet",
]

# Phases beyond this magnitude are reduced mod 2 pi in double-double arithmetic.
PHASE_REDUCTION_THRESHOLD = 1e8

# 2 pi = _C1 + _C2 + _C3 to ~160 bits
_C1 = 6.283185307179586
_C2 = 2.4492935982947064e-16
_C3 = -5.989539619436679e-33
_SPLITTER = 134217729.0  # 2**27 + 1


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of ``samples`` points from ``t_start`` to ``t_end`` inclusive."""

    t_start: float
    t_end: float
    samples: int

    def __post_init__(self):
        if not (math.isfinite(self.t_start) and math.isfinite(self.t_end)):
            raise ValueError("grid bounds must be finite")
        if self.t_start < 0:
            raise ValueError(f"t_start must be >= 0, got {self.t_start}")
        if not self.t_end > self.t_start:
            raise ValueError(f"t_end must exceed t_start, got [{self.t_start}, {self.t_end}]")
        if int(self.samples) != self.samples or self.samples < 2:
            raise ValueError(f"samples must be an integer >= 2, got {self.samples}")

    @property
    def spacing(self):
        return (self.t_end - self.t_start) / (self.samples - 1)

    @property
    def times(self):
        return np.linspace(self.t_start, self.t_end, int(self.samples))


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    """Sampled autocorrelation ``values[k] = A(grid.times[k])``."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex).reshape(-1)
        if values.size != self.grid.samples:
            raise ValueError(f"expected {self.grid.samples} values, got {values.size}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def times(self):
        return self.grid.times

    @property
    def abs2(self):
        return np.abs(self.values) ** 2

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class DensityGrid:
    """Box probability density; ``values[k, j]`` is rho(x[j], t[k])."""

    x: np.ndarray
    grid: TimeGrid
    values: np.ndarray

    @property
    def x_samples(self):
        return self.x.size

    @property
    def times(self):
        return self.grid.times

    def row_integrals(self):
        return np.trapezoid(self.values, self.x, axis=1)


def _two_prod(a, b):
    """Error-free product: a*b == p + e exactly (Dekker)."""
    p = a * b
    ca = _SPLITTER * a
    a_hi = ca - (ca - a)
    a_lo = a - a_hi
    cb = _SPLITTER * b
    b_hi = cb - (cb - b)
    b_lo = b - b_hi
    e = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, e


def reduced_phase(energy, t):
    """``energy * t`` modulo 2 pi, into roughly [-pi, pi].

    Small products are returned unreduced. Large ones are formed exactly as a
    double-double and reduced against a three-part 2 pi, so the result is
    accurate to the input precision of ``energy`` and ``t`` rather than to
    ``eps * |energy * t|``.
    """
    energy, t = np.broadcast_arrays(np.asarray(energy, dtype=float), np.asarray(t, dtype=float))
    phase = energy * t
    big = np.abs(phase) > PHASE_REDUCTION_THRESHOLD
    if not np.any(big):
        return phase
    shape = phase.shape
    phase, big = np.atleast_1d(phase).copy(), np.atleast_1d(big)
    p, err = _two_prod(np.atleast_1d(energy)[big], np.atleast_1d(t)[big])
    k = np.rint(p / _C1)
    h, l = _two_prod(k, _C1)
    phase[big] = (((p - h) - l) + err) - k * _C2 - k * _C3
    return phase.reshape(shape)


def _accumulate(weights, energy_columns, t):
    """sum_k weights[k] exp(-i phase_k(t)), one term at a time in index order.

    ``energy_columns`` holds one energy array per separable axis. Each term is
    the product of per-axis unit phasors, so a 2D phase is never rounded as
    (E1 + E2) t or as phi1 + phi2.
    """
    acc = np.zeros(t.shape, dtype=complex)
    columns = [np.atleast_1d(col).tolist() for col in energy_columns]
    for k, w in enumerate(weights.tolist()):
        if w == 0.0:
            continue
        term = w
        for col in columns:
            phi = reduced_phase(col[k], t)
            term = term * (np.cos(phi) - 1j * np.sin(phi))
        acc += term
    return acc


def autocorrelation_at(coeffs: Coefficients, model: SpectrumModel, times) -> np.ndarray:
    """A(t) = sum_n |c_n|^2 exp(-i E_n t) at arbitrary times (any sign)."""
    if coeffs.ns[0] < model.n_floor:
        raise DomainError(
            f"coefficient support starts at n={coeffs.ns[0]}, below the floor {model.n_floor} of {model!r}"
        )
    t = np.asarray(times, dtype=float)
    return _accumulate(coeffs.weights, [model.energy(coeffs.ns)], t)


def autocorrelation(coeffs: Coefficients, model: SpectrumModel, grid: TimeGrid) -> ComplexSeries:
    """Autocorrelation <psi(0)|psi(t)> sampled on ``grid``.

    Examples
    --------
    >>> from revival_lab.spectrum import Box1D
    >>> c = Coefficients([1, 2], [2**-0.5, 2**-0.5])
    >>> s = autocorrelation(c, Box1D(1.0, math.pi), TimeGrid(0.0, 2 * math.pi / 3, 2))
    >>> round(float(abs(s.values[-1])), 12)
    0.0
    """
    return ComplexSeries(grid, autocorrelation_at(coeffs, model, grid.times))


def autocorrelation_2d_at(coeffs: Coefficients2D, model: SpectrumModel2D, times) -> np.ndarray:
    f1, f2 = model.n_floors
    if coeffs.n1s.min() < f1 or coeffs.n2s.min() < f2:
        raise DomainError(f"coefficient support extends below the floors ({f1}, {f2}) of {model!r}")
    t = np.asarray(times, dtype=float)
    first, second = model.components
    return _accumulate(coeffs.weights, [first.energy(coeffs.n1s), second.energy(coeffs.n2s)], t)


def autocorrelation_2d(coeffs: Coefficients2D, model: SpectrumModel2D, grid: TimeGrid) -> ComplexSeries:
    return ComplexSeries(grid, autocorrelation_2d_at(coeffs, model, grid.times))


def _box_wavefunction(coeffs, mass, length, x, t):
    """psi(x, t) on the outer grid t x x, summed in ascending n."""
    model = Box1D(mass, length)
    if coeffs.ns[0] < model.n_floor:
        raise DomainError(f"box states start at n=1, coefficients start at n={coeffs.ns[0]}")
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any((x < 0) | (x > length)):
        raise ValueError(f"positions must lie in [0, {length}]")
    norm = math.sqrt(2.0 / length)
    psi = np.zeros(t.shape + x.shape, dtype=complex)
    for n, c in zip(coeffs.ns.tolist(), coeffs.amps.tolist()):
        if c == 0:
            continue
        phi = reduced_phase(model.energy(n), t)
        rotated = c * (np.cos(phi) - 1j * np.sin(phi))
        psi += np.multiply.outer(rotated, norm * np.sin(n * math.pi * x / length))
    return psi


def box_density(coeffs: Coefficients, m: float, L: float, x, t):
    """Probability density |psi(x, t)|^2 of a box packet.

    ``x`` may be a scalar or array of positions in ``[0, L]``; ``t`` a scalar.
    """
    rho = np.abs(_box_wavefunction(coeffs, m, L, x, float(t))) ** 2
    return float(rho) if rho.ndim == 0 else rho


def carpet(coeffs: Coefficients, m: float, L: float, x_samples: int, grid: TimeGrid) -> DensityGrid:
    """Space-time density raster over ``x_samples`` evenly spaced points of [0, L]."""
    if int(x_samples) != x_samples or x_samples < 2:
        raise ValueError(f"x_samples must be an integer >= 2, got {x_samples}")
    x = np.linspace(0.0, L, int(x_samples))
    values = np.abs(_box_wavefunction(coeffs, m, L, x, grid.times)) ** 2
    return DensityGrid(x=x, grid=grid, values=values)
