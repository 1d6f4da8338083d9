# %% [markdown]
# # Perfect revivals in an infinite well
#
# Box energies are exactly quadratic in n, so after t_rev every phase
# has advanced by a multiple of 2 pi and the packet is rebuilt exactly.
# Halfway there it comes back as its mirror image.

# %%
import math

import numpy as np

from revival_lab import Box1D, PacketSpec, TimeGrid, autocorrelation, box_density, carpet, detect_revivals
from revival_lab import gaussian_coefficients, time_scales

import warnings

warnings.simplefilter("ignore")  # the packet tail below n=1 is ~6e-11

# %%
model = Box1D(1.0, math.pi)
ts = time_scales(model, 10)
coeffs = gaussian_coefficients(PacketSpec.around(10, 1.5, floor=1))
grid = TimeGrid(0.0, 1.05 * ts.t_rev, 4096)
series = autocorrelation(coeffs, model, grid)

for e in detect_revivals(series, 0.2, ts.t_cl / 2, t_rev=ts.t_rev):
    print(f"t={e.t:.6f}  |A|^2={e.height:.6f}  fraction={e.fraction}")

# %%
x = np.linspace(0, math.pi, 512)
rho0 = box_density(coeffs, 1.0, math.pi, x, 0.0)
rho_half = box_density(coeffs, 1.0, math.pi, x, ts.t_rev / 2)
print("mirror error:", np.max(np.abs(rho_half - rho0[::-1])))

# %% [markdown]
# The space-time density (the "quantum carpet") shows the fractional
# revivals as the packet splits into copies and recombines.

# %%
from _plotting import plt, save

if plt is not None:
    d = carpet(coeffs, 1.0, math.pi, 400, TimeGrid(0.0, ts.t_rev, 800))
    fig, (a, b) = plt.subplots(1, 2, figsize=(10, 4))
    a.plot(series.times / ts.t_rev, series.abs2)
    a.set_xlabel("t / t_rev")
    a.set_ylabel("|A|^2")
    b.imshow(d.values, aspect="auto", origin="lower", extent=(0, math.pi, 0, 1), cmap="magma")
    b.set_xlabel("x")
    b.set_ylabel("t / t_rev")
    save(fig, "box_carpet.png")
