# %% [markdown]
# # A rectangular box with a common revival
#
# Each side of a 2D box has its own revival time. Choosing the side
# ratio so that t_rev,1/t_rev,2 = 2 makes the whole packet revive at
# t_rev,1. Early on, |A|^2 beats at the two classical frequencies.

# %%
import math
import warnings
from fractions import Fraction

from revival_lab import Box2D, PacketSpec, TimeGrid, autocorrelation_2d, autocorrelation_2d_at
from revival_lab import common_revival, commensurate, periodogram_beats, product_coefficients_2d
from revival_lab import time_scales_2d, tune_box_ratio

warnings.simplefilter("ignore")

# %%
L2 = math.pi / math.sqrt(2)
model = Box2D(1.0, L2 * tune_box_ratio(Fraction(2, 1)), L2)
ts = time_scales_2d(model, 10, 10)
ratio = commensurate(ts.t_rev_1, ts.t_rev_2)
t_common = common_revival(ts.t_rev_1, ts.t_rev_2, ratio)
print("ratio", ratio, "t_common", t_common)

spec = PacketSpec.around(10, 1.5, floor=1)
coeffs = product_coefficients_2d(spec, spec)
print("|A(t_common)| =", abs(autocorrelation_2d_at(coeffs, model, [t_common])[0]))

# %%
series = autocorrelation_2d(coeffs, model, TimeGrid(0.0, 5.0, 4096))
beats = periodogram_beats(series, top_k=8)
print("1/T_cl:", 1 / ts.t_cl_1, 1 / ts.t_cl_2, "bin", beats.bin_width)
for f, p in beats.frequencies:
    print(f"  f={f:.4f}  power={p:.3g}")

# %%
from _plotting import plt, save

if plt is not None:
    long = autocorrelation_2d(coeffs, model, TimeGrid(0.0, 1.1 * t_common, 4096))
    fig, ax = plt.subplots(figsize=(9, 3))
    ax.plot(long.times / t_common, long.abs2, lw=0.6)
    ax.set_xlabel("t / t_common")
    ax.set_ylabel("|A|^2")
    save(fig, "box2d_common_revival.png")
