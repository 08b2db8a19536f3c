"""
Cost of carry
=============

When holding the underlying costs ``q`` per year, the hedge solves the
differentiated replication condition instead.  Here an option is built so
that the answer is a constant 0.7, and the estimator recovers it.
"""

# %%
import numpy as np

from trendhedge import CarryParams, RatePath, delta_path, delta_path_carry, estimate_trend
from trendhedge.series import DAILY

n, q, r, target, drift, s0 = 250, 0.02, 0.03, 0.7, 0.1, 100.0
t = np.arange(n) * DAILY
S = s0 * np.exp(drift * t)
g = np.exp(r * t)
delta0 = target * (1 - q / drift)
V0 = 30 + target * s0
pi0 = V0 - delta0 * s0
V = V0 + target * (S - s0) - target * q * s0 * np.expm1(drift * t) / drift + pi0 * (g - 1)

# %%
rates = RatePath.constant(r, n)
vt, st = estimate_trend(V), estimate_trend(S)
carry = delta_path_carry(vt, st, rates, CarryParams(q))
plain = delta_path(vt, st, rates)
print("carry hedge, max |delta - 0.7| after warm-up:", np.abs(carry.delta[20:] - target).max())
print("hedge ignoring carry drifts to:", plain.delta[-1])
