"""Independent reference evaluations, written without touching the library's numerics."""

import cmath
import math

import mpmath


def energy_closed_form(kind, n, **p):
    if kind == "Harmonic":
        return p["omega"] * (n + 0.5)
    if kind == "Box1D":
        return (n * math.pi / p["length"]) ** 2 / (2 * p["mass"])
    if kind == "Rydberg":
        return -1.0 / (2 * n * n)
    if kind == "Polynomial":
        return sum(a * n**k for k, a in enumerate(p["coefficients"]))
    raise KeyError(kind)


def naive_autocorrelation(pairs, energies, t):
    """sum |c|^2 exp(-i E t) by plain Python loops."""
    total = 0j
    for (_, c), e in zip(pairs, energies):
        total += abs(c) ** 2 * cmath.exp(-1j * e * t)
    return total


def mp_autocorrelation(weights, energies, t, dps=60):
    """High-precision reference: phases in mpmath so no reduction is needed."""
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for w, e in zip(weights, energies):
            total += mpmath.mpf(w) * mpmath.exp(-1j * mpmath.mpf(e) * mpmath.mpf(t))
        return complex(total)


def naive_box_density(pairs, mass, length, x, t):
    psi = 0j
    for n, c in pairs:
        e = (n * math.pi / length) ** 2 / (2 * mass)
        psi += c * math.sqrt(2 / length) * math.sin(n * math.pi * x / length) * cmath.exp(-1j * e * t)
    return abs(psi) ** 2
