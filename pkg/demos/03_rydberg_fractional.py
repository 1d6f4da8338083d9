# %% [markdown]
# # Fractional revivals of a Rydberg packet
#
# With a nonzero third derivative the revival at t_rev is no longer
# exact, and between collapse and revival the packet reforms as several
# smaller copies at rational fractions of t_rev.

# %%
import warnings

from revival_lab import PacketSpec, Rydberg, TimeGrid, autocorrelation, detect_revivals
from revival_lab import gaussian_coefficients, time_scales

warnings.simplefilter("ignore")

model = Rydberg()
ts = time_scales(model, 30)
coeffs = gaussian_coefficients(PacketSpec.around(30, 2.5, floor=1))
series = autocorrelation(coeffs, model, TimeGrid(0.0, 1.05 * ts.t_rev, 2**15))

# %%
for e in detect_revivals(series, 0.3, ts.t_cl / 2, t_rev=ts.t_rev):
    label = "" if e.fraction is None else f"{e.fraction} (off by {e.residual:.4f})"
    print(f"t/t_rev={e.t / ts.t_rev:.4f}  |A|^2={e.height:.3f}  {label}")

# %% [markdown]
# Near t_rev/2 the two half-packets are a half period out of step with
# the initial one, so |A|^2 peaks at t_rev/2 +- T_cl/2 rather than at
# t_rev/2 itself.

# %%
print("expected offsets:", 0.5 - ts.t_cl / (2 * ts.t_rev), 0.5 + ts.t_cl / (2 * ts.t_rev))

# %%
from _plotting import plt, save

if plt is not None:
    fig, ax = plt.subplots(figsize=(9, 3))
    ax.plot(series.times / ts.t_rev, series.abs2, lw=0.5)
    ax.set_xlabel("t / t_rev")
    ax.set_ylabel("|A|^2")
    save(fig, "rydberg_fractional.png")
