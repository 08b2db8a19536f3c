"""
Abrupt changes and gentler hedging
==================================

Unusually large fluctuations around the trend flag abrupt changes.  Near
those points the exact tracking hedge can swing hard; freezing it, or
capping its per-day move, gives up exact tracking for a calmer control.
"""

# %%
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from trendhedge import (PolicyConfig, PriceSeries, RatePath, SynthSpec, bsm_price, delta_path,
                        estimate_trend, forecast_jumps, generate, replication_report,
                        shape_delta)

s = generate(SynthSpec(n=223, s0=3500, drift=0.05, vol=0.15, seed=4,
                       jumps=((120, -0.08), (180, 0.06))))
r = RatePath.constant(0.01, len(s))
v = PriceSeries("put", s.t0, np.array([bsm_price(x, 3500, 0.25, 0.01, 1.0 - k * s.dt_years, "put")
                                       for k, x in enumerate(s.values)]), s.dt_years)
st, vt = estimate_trend(s), estimate_trend(v)
path = delta_path(vt, st, r)
fc = forecast_jumps(s, st)
for e in fc:
    print(f"sample {e.index}: {e.direction} (score {e.score:.1f})")

# %%
frozen = shape_delta(path, fc, PolicyConfig("freeze", freeze_horizon=5))
limited = shape_delta(path, fc, PolicyConfig("rate_limit", max_step=0.003))
for name, p in (("risk-free", path), ("freeze", frozen), ("rate limit", limited)):
    print(f"{name:>10}: largest daily move {np.abs(np.diff(p.delta)).max():.4f}, "
          f"raw RMS error {replication_report(v, s, p).rms:.2f}")

# %%
fig, ax = plt.subplots(2, 1, figsize=(8, 6), sharex=True)
ax[0].plot(s.values, "k-", lw=0.8)
ax[0].plot(st.trend, "--")
for e in fc:
    ax[0].axvline(e.index, color="grey", lw=0.6)
    ax[0].plot(e.index, s.values[e.index], "o", mfc="none",
               color="g" if e.direction == "up" else "r")
ax[1].plot(path.delta, label="risk-free")
ax[1].plot(frozen.delta, "--", label="freeze")
ax[1].plot(limited.delta, ":", label="rate limit")
ax[1].legend()
fig.savefig("jumps_and_shaping.png", dpi=100)
