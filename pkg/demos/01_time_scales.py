# %% [markdown]
# # Time scales of a discrete spectrum
#
# Expanding E(n) about the packet centre gives the classical period,
# the revival time and the superrevival time. Which of them exist
# decides what the packet can do.

# %%
import math

import numpy as np

from revival_lab import Box1D, Harmonic, Polynomial, Rydberg, classify, time_scales

# %%
models = {
    "harmonic": Harmonic(1.0),
    "box": Box1D(1.0, math.pi),
    "rydberg": Rydberg(),
    "quadratic": Polynomial((0.0, 1.0, 0.02)),
}
nbar = 30
for name, model in models.items():
    ts = time_scales(model, nbar)
    print(f"{name:10s} {classify(model, nbar).value:22s} t_cl={ts.t_cl!r} t_rev={ts.t_rev!r} t_sr={ts.t_sr!r}")

# %% [markdown]
# For hydrogen-like levels the three scales separate by powers of n:
# t_rev/t_cl = 2n/3 and t_sr/t_rev = 3n/4.

# %%
for n in (5, 10, 40, 80):
    ts = time_scales(Rydberg(), n)
    print(n, ts.t_rev / ts.t_cl, 2 * n / 3, ts.t_sr / ts.t_rev, 3 * n / 4)

# %%
from _plotting import plt, save

if plt is not None:
    ns = np.arange(5, 101)
    scales = np.array([[getattr(time_scales(Rydberg(), n), k) for k in ("t_cl", "t_rev", "t_sr")] for n in ns])
    fig, ax = plt.subplots()
    for col, label in enumerate(("t_cl", "t_rev", "t_sr")):
        ax.loglog(ns, scales[:, col], label=label)
    ax.set_xlabel("nbar")
    ax.set_ylabel("time (a.u.)")
    ax.legend()
    save(fig, "rydberg_time_scales.png")
