"""Model-free hedge ratios computed from trends.

A long option ``V`` hedged by a short position of ``delta`` units of the
underlying ``S`` is asked to behave, on trends, like cash growing at the
risk-free rate::

    V_trend(t) - delta(t) * S_trend(t) = pi0 * exp(int_0^t r)

which is solved for ``delta`` sample by sample.  ``delta(0)`` and ``pi0`` are
fixed by matching the logarithmic derivatives of both sides at ``t = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .rates import RatePath
from .series import PriceSeries
from .trend import TrendEstimate

EPS_REL = 1e-9


class HedgeError(ValueError):
    pass


class SingularInitialization(HedgeError):
    """The underlying's trend grows at exactly the risk-free rate at t = 0."""


class DegenerateUnderlying(HedgeError):
    """The underlying's trend is (numerically) non-positive somewhere."""


class SingularCarryDenominator(HedgeError):
    def __init__(self, index: int, value: float):
        super().__init__(f"carry denominator vanishes at sample {index} ({value!r})")
        self.index = index


@dataclass(frozen=True)
class HedgeInit:
    delta0: float
    pi0: float


@dataclass(frozen=True)
class HedgePath:
    """Per-sample hedge ratio and the riskless target ``pi0 * growth``."""

    delta: np.ndarray
    target: np.ndarray
    init: HedgeInit

    def __len__(self):
        return self.delta.size

    def with_delta(self, delta: np.ndarray) -> "HedgePath":
        delta = np.array(delta, dtype=float)
        delta.flags.writeable = False
        return HedgePath(delta, self.target, self.init)


@dataclass(frozen=True)
class CarryParams:
    q: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.q):
            raise ValueError("carry rate must be finite")


@dataclass(frozen=True)
class ReplicationReport:
    errors: np.ndarray
    max_abs: float
    rms: float
    terminal: float


def _frozen(a) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    a.flags.writeable = False
    return a


def _check_lengths(**arrays) -> int:
    lengths = {name: len(a) for name, a in arrays.items()}
    if len(set(lengths.values())) != 1:
        desc = ", ".join(f"{name}={n}" for name, n in lengths.items())
        raise HedgeError(f"length mismatch: {desc}")
    return next(iter(lengths.values()))


def init_hedge(v: TrendEstimate, s: TrendEstimate, r0: float) -> HedgeInit:
    """Initial hedge ratio and initial trend-portfolio value.

    ``delta0 = (dV - r0 V) / (dS - r0 S)`` at sample 0, with trend values and
    per-year trend slopes, and ``pi0 = V - delta0 S``.
    """
    if len(v) == 0 or len(s) == 0:
        raise HedgeError("empty trend estimate")
    V, dV = float(v.trend[0]), float(v.deriv[0])
    S, dS = float(s.trend[0]), float(s.deriv[0])
    den = dS - r0 * S
    if abs(den) <= EPS_REL * max(1.0, abs(r0 * S)):
        raise SingularInitialization(
            f"underlying trend grows at the risk-free rate at t=0 (dS - r S = {den!r}); "
            "initial hedge ratio is indeterminate")
    delta0 = (dV - r0 * V) / den
    return HedgeInit(delta0, V - delta0 * S)


def _check_underlying(s: TrendEstimate) -> None:
    floor = EPS_REL * float(np.max(np.abs(s.raw)))
    bad = np.flatnonzero(s.trend <= floor)
    if bad.size:
        k = int(bad[0])
        raise DegenerateUnderlying(f"underlying trend {s.trend[k]!r} at sample {k} is not positive")


def delta_path(v: TrendEstimate, s: TrendEstimate, r: RatePath,
               init: HedgeInit | None = None) -> HedgePath:
    """Risk-free tracking hedge ``delta = (V_trend - pi0 growth) / S_trend``.

    ``init`` defaults to :func:`init_hedge` evaluated with ``r.rates[0]``.
    """
    _check_lengths(option=v, underlying=s, rates=r)
    if init is None:
        init = init_hedge(v, s, float(r.rates[0]))
    _check_underlying(s)
    target = init.pi0 * r.growth()
    delta = (v.trend - target) / s.trend
    return HedgePath(_frozen(delta), _frozen(target), init)


def delta_path_carry(v: TrendEstimate, s: TrendEstimate, r: RatePath,
                     carry: CarryParams, init: HedgeInit | None = None) -> HedgePath:
    """Hedge with a holding cost ``q`` on the underlying (commodity style).

    Uses the differential form
    ``delta = (dV - r pi0 growth) / (dS - q S)``.  The initialization is the
    same as for :func:`delta_path`.
    """
    _check_lengths(option=v, underlying=s, rates=r)
    if init is None:
        init = init_hedge(v, s, float(r.rates[0]))
    den = s.deriv - carry.q * s.trend
    tol = EPS_REL * np.maximum(1.0, np.abs(carry.q * s.trend))
    bad = np.flatnonzero(np.abs(den) <= tol)
    if bad.size:
        k = int(bad[0])
        raise SingularCarryDenominator(k, float(den[k]))
    target = init.pi0 * r.growth()
    delta = (v.deriv - r.rates * target) / den
    return HedgePath(_frozen(delta), _frozen(target), init)


def replication_report(v_raw: PriceSeries | np.ndarray, s_raw: PriceSeries | np.ndarray,
                       path: HedgePath) -> ReplicationReport:
    """Tracking error of the hedge on raw prices rather than trends.

    ``e[k] = (V[k] - delta[k] S[k]) - target[k]``.
    """
    V = v_raw.values if isinstance(v_raw, PriceSeries) else np.asarray(v_raw, dtype=float)
    S = s_raw.values if isinstance(s_raw, PriceSeries) else np.asarray(s_raw, dtype=float)
    _check_lengths(option=V, underlying=S, hedge=path.delta)
    e = (V - path.delta * S) - path.target
    return ReplicationReport(
        errors=_frozen(e),
        max_abs=float(np.max(np.abs(e))),
        rms=float(np.sqrt(np.mean(e * e))),
        terminal=float(e[-1]),
    )


def norm_cdf(x: float) -> float:
    # erfc form keeps precision in the lower tail
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def _d1(spot, strike, vol, rate, tau):
    for name, val in (("spot", spot), ("strike", strike), ("vol", vol), ("tau", tau)):
        if not val > 0:
            raise ValueError(f"{name} must be positive, got {val}")
    return (math.log(spot / strike) + (rate + 0.5 * vol * vol) * tau) / (vol * math.sqrt(tau))


def bsm_delta(spot: float, strike: float, vol: float, rate: float, tau: float,
              kind: Literal["call", "put"] = "call") -> float:
    """Black-Scholes delta: ``N(d1)`` for a call, ``N(d1) - 1`` for a put."""
    d1 = _d1(spot, strike, vol, rate, tau)
    if kind == "call":
        return norm_cdf(d1)
    if kind == "put":
        return norm_cdf(d1) - 1.0
    raise ValueError(f"kind must be 'call' or 'put', got {kind!r}")


def bsm_price(spot: float, strike: float, vol: float, rate: float, tau: float,
              kind: Literal["call", "put"] = "call") -> float:
    """Black-Scholes price; used to mark synthetic option series to model."""
    d1 = _d1(spot, strike, vol, rate, tau)
    d2 = d1 - vol * math.sqrt(tau)
    disc = strike * math.exp(-rate * tau)
    if kind == "call":
        return spot * norm_cdf(d1) - disc * norm_cdf(d2)
    if kind == "put":
        return disc * norm_cdf(-d2) - spot * norm_cdf(-d1)
    raise ValueError(f"kind must be 'call' or 'put', got {kind!r}")
