"""
Hedging a put on trends
=======================

Underlying, option, their trends, the daily rate and the resulting hedge
ratio, on synthetic data standing in for an index put.  The Black-Scholes
delta of the same put is drawn for comparison only.
"""

# %%
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from trendhedge import (PriceSeries, RatePath, SynthSpec, bsm_delta, bsm_price, delta_path,
                        estimate_trend, generate, replication_report)

s = generate(SynthSpec(n=223, s0=3500, drift=0.08, vol=0.22, seed=2009))
tau0, strike, iv = 1.0, 3500.0, 0.25
rates = RatePath(0.01 + 0.002 * np.sin(np.arange(len(s)) / 40), s.dt_years)
v = PriceSeries("put", s.t0, np.array([
    bsm_price(x, strike, iv, rates.rates[k], tau0 - k * s.dt_years, "put")
    for k, x in enumerate(s.values)]), s.dt_years)

st, vt = estimate_trend(s), estimate_trend(v)
path = delta_path(vt, st, rates)
print("initial hedge ratio:", path.init.delta0, " initial trend portfolio:", path.init.pi0)

# %%
# On trends the portfolio tracks the cash account exactly; on raw prices the
# quick fluctuations show up as tracking error.
rep = replication_report(v, s, path)
gap = vt.trend - path.delta * st.trend - path.target
print("max trend gap:", np.abs(gap).max(), " raw RMS error:", rep.rms)

# %%
bs = [bsm_delta(x, strike, iv, rates.rates[k], tau0 - k * s.dt_years, "put")
      for k, x in enumerate(s.values)]
fig, ax = plt.subplots(2, 2, figsize=(10, 6))
ax[0, 0].plot(s.values, "k-", lw=0.8)
ax[0, 0].plot(st.trend, "--")
ax[0, 0].set_title("underlying and trend")
ax[0, 1].plot(v.values, "k-", lw=0.8)
ax[0, 1].plot(vt.trend, "--")
ax[0, 1].set_title("put and trend")
ax[1, 0].plot(rates.rates)
ax[1, 0].set_title("rate r")
ax[1, 1].plot(path.delta, label="trend hedge")
ax[1, 1].plot(bs, ":", label="Black-Scholes delta")
ax[1, 1].legend()
ax[1, 1].set_title("hedge ratio")
fig.tight_layout()
fig.savefig("model_free_delta.png", dpi=100)
