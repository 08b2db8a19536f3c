"""Abrupt-change flags from unusual fluctuations, and gentler hedge paths.

A sample is flagged when its residual around the trend is large compared
with the root-mean-square residual of the preceding ``stat_window`` samples.
Flags fire at detection time; no lead time is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .hedge import HedgePath
from .series import PriceSeries
from .trend import TrendEstimate

UP = "up"
DOWN = "down"


@dataclass(frozen=True)
class JumpConfig:
    stat_window: int = 20
    z_threshold: float = 3.0
    direction_window: int = 5
    refractory: int = 10

    def __post_init__(self):
        if self.stat_window < 4:
            raise ValueError("stat_window must be >= 4")
        if not self.z_threshold > 0:
            raise ValueError("z_threshold must be positive")
        if self.direction_window < 1:
            raise ValueError("direction_window must be >= 1")
        if self.refractory < 0:
            raise ValueError("refractory must be >= 0")


@dataclass(frozen=True)
class JumpEvent:
    index: int
    direction: Literal["up", "down"]
    score: float


@dataclass(frozen=True)
class JumpForecast:
    events: tuple[JumpEvent, ...] = ()

    def __len__(self):
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    @property
    def indices(self) -> list[int]:
        return [e.index for e in self.events]


@dataclass(frozen=True)
class PolicyConfig:
    policy: Literal["freeze", "rate_limit"] = "rate_limit"
    freeze_horizon: int = 5
    max_step: float = 0.05

    def __post_init__(self):
        policy = self.policy.replace("-", "_")
        if policy not in ("freeze", "rate_limit"):
            raise ValueError(f"unknown policy {self.policy!r}")
        object.__setattr__(self, "policy", policy)
        if self.freeze_horizon < 0:
            raise ValueError("freeze_horizon must be >= 0")
        if not self.max_step > 0:
            raise ValueError("max_step must be positive")


def residual_scale(residual: np.ndarray, stat_window: int, floor: float) -> np.ndarray:
    """Trailing RMS of ``residual[k - stat_window : k]`` (NaN for k < stat_window)."""
    r = np.asarray(residual, dtype=float)
    sigma = np.full(r.size, np.nan)
    if r.size > stat_window:
        sq = np.lib.stride_tricks.sliding_window_view(r * r, stat_window)[:-1]
        sigma[stat_window:] = np.sqrt(sq.mean(axis=1))
    return np.maximum(sigma, floor)


def forecast_jumps(series: PriceSeries | np.ndarray, trend: TrendEstimate,
                   cfg: JumpConfig = JumpConfig()) -> JumpForecast:
    """Flag samples whose fluctuation is unusual relative to the recent past.

    The score at ``k`` is ``|residual[k]| / sigma[k]`` with ``sigma`` the
    strictly past RMS residual over ``stat_window`` samples, floored at
    ``1e-12`` times the largest price.  A score ``>= z_threshold`` yields an
    event unless it falls within ``refractory`` samples of the previous one.
    Direction is the sign of the mean residual over the last
    ``direction_window`` samples, ``k`` included.
    """
    x = series.values if isinstance(series, PriceSeries) else np.asarray(series, dtype=float)
    res = np.asarray(trend.residual, dtype=float)
    if x.size != res.size:
        raise ValueError(f"length mismatch: series={x.size}, trend={res.size}")
    if x.size < cfg.stat_window:
        raise ValueError(f"series has {x.size} samples, fewer than stat_window={cfg.stat_window}")

    sigma = residual_scale(res, cfg.stat_window, 1e-12 * float(np.max(np.abs(x))))
    score = np.abs(res) / sigma
    events: list[JumpEvent] = []
    last = None
    for k in np.flatnonzero(score >= cfg.z_threshold):
        k = int(k)
        if last is not None and k - last <= cfg.refractory:
            continue
        lo = max(0, k - cfg.direction_window + 1)
        direction = UP if res[lo:k + 1].mean() > 0 else DOWN
        events.append(JumpEvent(k, direction, float(score[k])))
        last = k
    return JumpForecast(tuple(events))


def shape_delta(path: HedgePath, forecast: JumpForecast, cfg: PolicyConfig) -> HedgePath:
    """Replace the risk-free hedge path by a less violent one.

    ``freeze`` holds the hedge ratio of the sample preceding each event for
    ``freeze_horizon + 1`` samples.  ``rate_limit`` caps every per-sample
    move at ``max_step`` over the whole path; events are ignored.
    """
    delta = np.asarray(path.delta, dtype=float)
    n = delta.size
    for e in forecast:
        if not 0 <= e.index < n:
            raise ValueError(f"event index {e.index} outside hedge path of length {n}")

    if cfg.policy == "rate_limit":
        out = np.empty(n)
        out[0] = delta[0]
        for k in range(1, n):
            step = min(max(delta[k] - out[k - 1], -cfg.max_step), cfg.max_step)
            out[k] = out[k - 1] + step
        return path.with_delta(out)

    out = delta.copy()
    for start, stop in freeze_spans(forecast, cfg.freeze_horizon, n):
        out[start:stop] = out[start - 1] if start > 0 else delta[0]
    return path.with_delta(out)


def freeze_spans(forecast: JumpForecast, horizon: int, n: int) -> list[tuple[int, int]]:
    """Half-open ``[start, stop)`` spans frozen by ``freeze``, overlaps merged."""
    spans: list[tuple[int, int]] = []
    for e in forecast:
        start, stop = e.index, min(n, e.index + horizon + 1)
        if spans and start <= spans[-1][1]:
            spans[-1] = (spans[-1][0], max(stop, spans[-1][1]))
        else:
            spans.append((start, stop))
    return spans
