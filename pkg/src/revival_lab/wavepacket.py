"""Gaussian-weighted superpositions of energy eigenstates."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import TruncationWarning

__all__ = [
    "PacketSpec",
    "Coefficients",
    "Coefficients2D",
    "gaussian_coefficients",
    "product_coefficients_2d",
    "packet_moments",
    "TAIL_THRESHOLD",
]

TAIL_THRESHOLD = 1e-12
_NORM_TOL = 1e-12


@dataclass(frozen=True)
class PacketSpec:
    """Mean quantum number, width of the |c_n|^2 distribution, and integer support."""

    nbar: float
    sigma: float
    n_min: int
    n_max: int

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if not self.nbar > 0:
            raise ValueError(f"nbar must be positive, got {self.nbar}")
        if self.n_min > self.n_max:
            raise ValueError(f"empty support [{self.n_min}, {self.n_max}]")
        if not self.n_min <= math.floor(self.nbar) <= self.n_max:
            raise ValueError(
                f"support [{self.n_min}, {self.n_max}] does not contain floor(nbar)={math.floor(self.nbar)}"
            )

    @classmethod
    def around(cls, nbar, sigma, width=10.0, floor=0):
        """Support of ``nbar +/- width*sigma`` clipped below at ``floor``."""
        n_min = max(int(floor), math.floor(nbar - width * sigma))
        n_max = max(n_min, math.ceil(nbar + width * sigma))
        return cls(nbar, sigma, n_min, n_max)

    def check_floor(self, n_floor):
        if self.n_min < n_floor:
            raise ValueError(f"n_min={self.n_min} is below the model floor {n_floor}")


def _check_normalized(amps):
    total = float(np.sum(np.abs(amps) ** 2))
    if abs(total - 1.0) > _NORM_TOL:
        raise ValueError(f"coefficients are not normalized: sum |c|^2 = {total!r}")


@dataclass(frozen=True, eq=False)
class Coefficients:
    """Amplitudes ``amps[k]`` of eigenstates ``ns[k]``, strictly increasing in n."""

    ns: np.ndarray
    amps: np.ndarray

    def __post_init__(self):
        ns = np.asarray(self.ns, dtype=np.int64).reshape(-1)
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if ns.size == 0 or ns.shape != amps.shape:
            raise ValueError("need one amplitude per quantum number and a nonempty support")
        if np.any(np.diff(ns) <= 0):
            raise ValueError("quantum numbers must be strictly increasing")
        _check_normalized(amps)
        ns.flags.writeable = False
        amps.flags.writeable = False
        object.__setattr__(self, "ns", ns)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def single(cls, n):
        return cls([n], [1.0])

    @property
    def weights(self):
        """|c_n|^2."""
        return np.abs(self.amps) ** 2

    def entries(self):
        return list(zip(self.ns.tolist(), self.amps.tolist()))

    def __len__(self):
        return self.ns.size


@dataclass(frozen=True, eq=False)
class Coefficients2D:
    """Amplitudes on integer pairs ``(n1s[k], n2s[k])``, lexicographically ordered."""

    n1s: np.ndarray
    n2s: np.ndarray
    amps: np.ndarray

    def __post_init__(self):
        n1s = np.asarray(self.n1s, dtype=np.int64).reshape(-1)
        n2s = np.asarray(self.n2s, dtype=np.int64).reshape(-1)
        amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if n1s.size == 0 or not (n1s.shape == n2s.shape == amps.shape):
            raise ValueError("need one amplitude per (n1, n2) pair and a nonempty support")
        step1, step2 = np.diff(n1s), np.diff(n2s)
        if np.any((step1 < 0) | ((step1 == 0) & (step2 <= 0))):
            raise ValueError("(n1, n2) keys must be strictly increasing in lexicographic order")
        _check_normalized(amps)
        for arr in (n1s, n2s, amps):
            arr.flags.writeable = False
        object.__setattr__(self, "n1s", n1s)
        object.__setattr__(self, "n2s", n2s)
        object.__setattr__(self, "amps", amps)

    @property
    def weights(self):
        return np.abs(self.amps) ** 2

    def entries(self):
        return [((a, b), c) for a, b, c in zip(self.n1s.tolist(), self.n2s.tolist(), self.amps.tolist())]

    def __len__(self):
        return self.amps.size


def _tail_mass(spec):
    """Weight of the untruncated discrete Gaussian that falls outside the support."""
    lo = math.floor(spec.nbar - 40.0 * spec.sigma) - 1
    hi = math.ceil(spec.nbar + 40.0 * spec.sigma) + 1
    n = np.arange(min(lo, spec.n_min), max(hi, spec.n_max) + 1)
    w = np.exp(-((n - spec.nbar) ** 2) / (2.0 * spec.sigma**2))
    inside = (n >= spec.n_min) & (n <= spec.n_max)
    total = w.sum()
    return float(w[~inside].sum() / total) if total > 0 else 0.0


def gaussian_coefficients(spec: PacketSpec) -> Coefficients:
    """Real amplitudes ``c_n ∝ exp(-(n - nbar)^2 / (4 sigma^2))`` over the support.

    The amplitude carries the quarter, so ``|c_n|^2`` has standard deviation
    ``sigma``. Emits :class:`TruncationWarning` when the support discards
    weight of ``TAIL_THRESHOLD`` or more.
    """
    tail = _tail_mass(spec)
    if tail >= TAIL_THRESHOLD:
        warnings.warn(
            TruncationWarning(
                f"support [{spec.n_min}, {spec.n_max}] truncates tail mass {tail:.3e} "
                f"of the packet (nbar={spec.nbar}, sigma={spec.sigma})",
                tail,
            ),
            stacklevel=2,
        )
    ns = np.arange(spec.n_min, spec.n_max + 1)
    amps = np.exp(-((ns - spec.nbar) ** 2) / (4.0 * spec.sigma**2))
    norm = math.sqrt(float(np.sum(amps * amps)))
    if norm == 0.0:
        raise ValueError(f"packet has no weight on support [{spec.n_min}, {spec.n_max}]")
    return Coefficients(ns, amps / norm)


def product_coefficients_2d(spec1: PacketSpec, spec2: PacketSpec) -> Coefficients2D:
    """Separable amplitudes c1[n1] * c2[n2]; pairs with zero amplitude are dropped."""
    c1 = gaussian_coefficients(spec1)
    c2 = gaussian_coefficients(spec2)
    amps = np.outer(c1.amps, c2.amps)
    n1, n2 = np.meshgrid(c1.ns, c2.ns, indexing="ij")
    keep = (amps != 0).ravel()
    amps = amps.ravel()[keep]
    # products of two unit-norm vectors can drift by a few ulp
    amps = amps / math.sqrt(float(np.sum(np.abs(amps) ** 2)))
    return Coefficients2D(n1.ravel()[keep], n2.ravel()[keep], amps)


def packet_moments(coeffs: Coefficients) -> tuple[float, float]:
    """Mean and standard deviation of n under the weights |c_n|^2."""
    w = coeffs.weights
    n = coeffs.ns.astype(float)
    mean = float(np.sum(n * w))
    std = math.sqrt(float(np.sum((n - mean) ** 2 * w)))
    return mean, std
