"""Discrete energy spectra, their derivatives, and the revival time scales.

Energies are in natural units (hbar = 1). Each model knows its closed form
``E(n)`` and analytic derivatives of the continuous extension up to third
order. From the derivatives at the mean quantum number ``nbar`` follow the
classical period, the revival time and the superrevival time::

    t_cl = 2 pi / |E'|,   t_rev = 4 pi / |E''|,   t_sr = 12 pi / |E'''|

A scale whose derivative vanishes is ``None`` rather than zero or infinity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DegenerateSpectrumError, DomainError

__all__ = [
    "SpectrumModel",
    "Harmonic",
    "Box1D",
    "Rydberg",
    "Polynomial",
    "SpectrumModel2D",
    "SeparableSum",
    "Box2D",
    "TimeScales",
    "TimeScales2D",
    "RevivalClass",
    "eval_energy",
    "eval_derivative",
    "time_scales",
    "time_scales_2d",
    "classify",
]

TWO_PI = 2.0 * math.pi

# Prefactors C in t = C / |d^k E / dn^k|; the k-th Taylor term is E^(k) dn^k / k!.
_SCALE_PREFACTOR = {1: 2.0 * math.pi, 2: 4.0 * math.pi, 3: 12.0 * math.pi}


def _check_order(order):
    if order not in (1, 2, 3):
        raise ValueError(f"derivative order must be 1, 2 or 3, got {order!r}")


def _scale(prefactor, derivative):
    return None if derivative == 0.0 else prefactor / abs(derivative)


class SpectrumModel:
    """Base class for one-quantum-number spectra.

    Subclasses provide ``n_floor``, ``_energy`` (vectorized over a float
    array) and ``_derivative``.
    """

    n_floor: int = 0

    def energy(self, n):
        """Energy at integer quantum number(s) ``n``; accepts scalars or arrays."""
        arr = np.asarray(n)
        if arr.size and np.min(arr) < self.n_floor:
            raise DomainError(
                f"{self!r}: quantum number {np.min(arr)} below lower bound n >= {self.n_floor}"
            )
        out = self._energy(arr.astype(float))
        return float(out) if out.ndim == 0 else out

    def derivative(self, nbar, order):
        _check_order(order)
        if nbar < self.n_floor:
            raise DomainError(f"{self!r}: nbar={nbar} below lower bound {self.n_floor}")
        return float(self._derivative(float(nbar), order))

    def _energy(self, n):
        raise NotImplementedError

    def _derivative(self, nbar, order):
        raise NotImplementedError


@dataclass(frozen=True)
class Harmonic(SpectrumModel):
    """E_n = omega (n + 1/2), n >= 0."""

    omega: float = 1.0
    n_floor = 0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError(f"Harmonic requires omega > 0, got {self.omega}")

    def _energy(self, n):
        return self.omega * (n + 0.5)

    def _derivative(self, nbar, order):
        return self.omega if order == 1 else 0.0


@dataclass(frozen=True)
class Box1D(SpectrumModel):
    """Infinite square well of width ``length``: E_n = n^2 pi^2 / (2 m L^2), n >= 1."""

    mass: float = 1.0
    length: float = math.pi
    n_floor = 1

    def __post_init__(self):
        if not (self.mass > 0 and self.length > 0):
            raise ValueError(f"Box1D requires mass > 0 and length > 0, got {self.mass}, {self.length}")

    @property
    def unit(self):
        """pi^2 / (2 m L^2), the coefficient of n^2."""
        return math.pi**2 / (2.0 * self.mass * self.length**2)

    def _energy(self, n):
        return self.unit * n * n

    def _derivative(self, nbar, order):
        if order == 1:
            return 2.0 * self.unit * nbar
        if order == 2:
            return 2.0 * self.unit
        return 0.0


@dataclass(frozen=True)
class Rydberg(SpectrumModel):
    """Hydrogenic levels in atomic units: E_n = -1 / (2 n^2), n >= 1."""

    n_floor = 1

    def _energy(self, n):
        return -0.5 / (n * n)

    def _derivative(self, nbar, order):
        if order == 1:
            return nbar**-3
        if order == 2:
            return -3.0 * nbar**-4
        return 12.0 * nbar**-5


@dataclass(frozen=True)
class Polynomial(SpectrumModel):
    """E_n = a0 + a1 n + a2 n^2 + a3 n^3 for n >= 0."""

    coefficients: tuple = (0.0, 1.0)
    n_floor = 0

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        if len(coeffs) > 4:
            raise ValueError("Polynomial spectra are limited to cubic order (at most 4 coefficients)")
        coeffs = coeffs + (0.0,) * (4 - len(coeffs))
        if not any(coeffs[1:]):
            raise ValueError("Polynomial needs a nonzero coefficient of order >= 1")
        object.__setattr__(self, "coefficients", coeffs)

    def _energy(self, n):
        a0, a1, a2, a3 = self.coefficients
        return a0 + n * (a1 + n * (a2 + n * a3))

    def _derivative(self, nbar, order):
        _, a1, a2, a3 = self.coefficients
        if order == 1:
            return a1 + 2.0 * a2 * nbar + 3.0 * a3 * nbar * nbar
        if order == 2:
            return 2.0 * a2 + 6.0 * a3 * nbar
        return 6.0 * a3


class SpectrumModel2D:
    """Base class for separable two-quantum-number spectra E1(n1) + E2(n2)."""

    @property
    def components(self) -> tuple[SpectrumModel, SpectrumModel]:
        raise NotImplementedError

    @property
    def n_floors(self):
        a, b = self.components
        return a.n_floor, b.n_floor

    def energy(self, n1, n2):
        a, b = self.components
        return a.energy(n1) + b.energy(n2)

    def partial(self, nbar1, nbar2, orders):
        """Partial derivative d^(i+j) E / dn1^i dn2^j at (nbar1, nbar2) for ``orders=(i, j)``."""
        i, j = orders
        _check_order(i + j)
        a, b = self.components
        if i and j:
            # separable: every mixed partial vanishes identically
            for model, nbar in ((a, nbar1), (b, nbar2)):
                if nbar < model.n_floor:
                    raise DomainError(f"{model!r}: nbar={nbar} below lower bound {model.n_floor}")
            return 0.0
        if i:
            b.derivative(nbar2, 1)  # domain check only
            return a.derivative(nbar1, i)
        a.derivative(nbar1, 1)
        return b.derivative(nbar2, j)


@dataclass(frozen=True)
class SeparableSum(SpectrumModel2D):
    first: SpectrumModel
    second: SpectrumModel

    @property
    def components(self):
        return self.first, self.second


@dataclass(frozen=True)
class Box2D(SpectrumModel2D):
    """Rectangular box with sides ``length_1`` x ``length_2``."""

    mass: float = 1.0
    length_1: float = math.pi
    length_2: float = math.pi

    def __post_init__(self):
        if not (self.mass > 0 and self.length_1 > 0 and self.length_2 > 0):
            raise ValueError("Box2D requires mass, length_1 and length_2 > 0")

    @property
    def components(self):
        return Box1D(self.mass, self.length_1), Box1D(self.mass, self.length_2)


@dataclass(frozen=True)
class TimeScales:
    """Revival time scales at one expansion point, with the signed derivatives they came from."""

    t_cl: Optional[float]
    t_rev: Optional[float]
    t_sr: Optional[float]
    d1: float
    d2: float
    d3: float

    def as_dict(self):
        return {"t_cl": self.t_cl, "t_rev": self.t_rev, "t_sr": self.t_sr}


THIRD_ORDER_LABELS = ("t_sr_111", "t_sr_112", "t_sr_122", "t_sr_222")
_THIRD_ORDERS = ((3, 0), (2, 1), (1, 2), (0, 3))


@dataclass(frozen=True)
class TimeScales2D:
    """Two classical periods, three revival times and four third-order scales.

    ``partials`` maps ``(i, j)`` to the raw value of d^(i+j)E/dn1^i dn2^j.
    """

    t_cl_1: Optional[float]
    t_cl_2: Optional[float]
    t_rev_1: Optional[float]
    t_rev_2: Optional[float]
    t_rev_mixed: Optional[float]
    third_order: tuple
    partials: dict = field(default_factory=dict, compare=False)

    def as_dict(self):
        out = {
            "t_cl_1": self.t_cl_1,
            "t_cl_2": self.t_cl_2,
            "t_rev_1": self.t_rev_1,
            "t_rev_2": self.t_rev_2,
            "t_rev_mixed": self.t_rev_mixed,
        }
        out.update(zip(THIRD_ORDER_LABELS, self.third_order))
        return out


class RevivalClass(enum.Enum):
    TypeI_Periodic = "TypeI_Periodic"
    TypeII_PerfectRevival = "TypeII_PerfectRevival"
    TypeIII_General = "TypeIII_General"


def eval_energy(model: SpectrumModel, n: int) -> float:
    """Closed-form energy of level ``n``; raises DomainError below ``model.n_floor``."""
    if int(n) != n:
        raise DomainError(f"quantum number must be an integer, got {n!r}")
    return model.energy(int(n))


def eval_derivative(model: SpectrumModel, nbar: float, order: int) -> float:
    return model.derivative(nbar, order)


def time_scales(model: SpectrumModel, nbar: float) -> TimeScales:
    """Classical period, revival and superrevival times at ``nbar``.

    Examples
    --------
    >>> ts = time_scales(Rydberg(), 10)
    >>> round(ts.t_cl / math.pi, 9)
    2000.0
    >>> time_scales(Harmonic(1.0), 5).t_rev is None
    True
    """
    d1, d2, d3 = (model.derivative(nbar, k) for k in (1, 2, 3))
    return TimeScales(
        t_cl=_scale(_SCALE_PREFACTOR[1], d1),
        t_rev=_scale(_SCALE_PREFACTOR[2], d2),
        t_sr=_scale(_SCALE_PREFACTOR[3], d3),
        d1=d1,
        d2=d2,
        d3=d3,
    )


def time_scales_2d(model: SpectrumModel2D, nbar1: float, nbar2: float) -> TimeScales2D:
    """Time scales of a two-quantum-number spectrum.

    Every scale is ``2 pi i! j! / |d^(i+j)E / dn1^i dn2^j|``, the period of the
    matching Taylor term. This reproduces 2 pi and 4 pi for the pure first and
    second orders, and gives ``t_rev_mixed = 2 pi / |d2E/dn1 dn2|``.
    """
    partials = {
        orders: model.partial(nbar1, nbar2, orders)
        for orders in ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2)) + _THIRD_ORDERS
    }

    def scale(i, j):
        return _scale(TWO_PI * math.factorial(i) * math.factorial(j), partials[(i, j)])

    return TimeScales2D(
        t_cl_1=scale(1, 0),
        t_cl_2=scale(0, 1),
        t_rev_1=scale(2, 0),
        t_rev_2=scale(0, 2),
        t_rev_mixed=scale(1, 1),
        third_order=tuple(scale(i, j) for i, j in _THIRD_ORDERS),
        partials=partials,
    )


def classify(model: SpectrumModel, nbar: float) -> RevivalClass:
    """Revival type from which of E'' and E''' vanish at ``nbar``."""
    d1, d2, d3 = (model.derivative(nbar, k) for k in (1, 2, 3))
    if d1 == 0.0:
        raise DegenerateSpectrumError(f"{model!r}: E'({nbar}) = 0, no classical period")
    if d2 == 0.0 and d3 == 0.0:
        return RevivalClass.TypeI_Periodic
    if d3 == 0.0:
        return RevivalClass.TypeII_PerfectRevival
    return RevivalClass.TypeIII_General
