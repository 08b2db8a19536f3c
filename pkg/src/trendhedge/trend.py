"""Causal trend and trend-derivative estimation.

Each sample is explained by a least-squares polynomial fitted to the samples
up to and including it (no lookahead), a causal cousin of the Savitzky-Golay
filter.  Because the fit over a window of fixed length is a fixed linear
combination of the observations, the estimator is run as a bank of FIR
weights, one pair (value, slope) per window length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .series import PriceSeries


@dataclass(frozen=True)
class TrendConfig:
    window: int = 20
    degree: int = 2
    min_points: int = 5

    def __post_init__(self):
        if self.degree not in (1, 2):
            raise ValueError(f"degree must be 1 or 2, got {self.degree}")
        if self.window < self.degree + 2:
            raise ValueError("window must be >= degree + 2")
        if self.min_points < self.degree + 1:
            raise ValueError("min_points must be >= degree + 1")
        if self.min_points > self.window:
            raise ValueError("min_points must not exceed window")


@dataclass(frozen=True)
class TrendEstimate:
    """Trend, trend slope (per year) and quick fluctuations of one series.

    ``residual`` is defined as ``raw - trend`` so the decomposition is exact.
    """

    trend: np.ndarray
    deriv: np.ndarray
    residual: np.ndarray

    def __len__(self):
        return self.trend.size

    @property
    def raw(self) -> np.ndarray:
        return self.trend + self.residual


@lru_cache(maxsize=None)
def fit_weights(m: int, degree: int, at: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Weights mapping ``m`` consecutive samples to the fitted value and slope.

    The abscissa is ``t = (j - (m - 1)) / (m - 1)`` for ``j = 0..m-1``, i.e.
    ``[-1, 0]`` with the newest sample at ``t = 0``, which keeps the normal
    equations well conditioned.  ``at`` selects the sample position
    (default: the last one) where the polynomial is evaluated.  The slope
    weights are per sample, not per unit of ``t``.
    """
    if at is None:
        at = m - 1
    t = (np.arange(m) - (m - 1)) / (m - 1)
    A = np.vander(t, degree + 1, increasing=True)
    # rows of (A^T A)^{-1} A^T give the polynomial coefficients
    coef_w = np.linalg.solve(A.T @ A, A.T)
    ta = (at - (m - 1)) / (m - 1)
    powers = np.arange(degree + 1)
    value = (ta ** powers) @ coef_w
    dpowers = np.array([p * ta ** (p - 1) if p > 0 else 0.0 for p in powers])
    slope = (dpowers @ coef_w) / (m - 1)
    value.flags.writeable = False
    slope.flags.writeable = False
    return value, slope


def estimate_trend(series: PriceSeries | np.ndarray, cfg: TrendConfig = TrendConfig(),
                   dt_years: float | None = None) -> TrendEstimate:
    """Decompose a series into trend + quick fluctuations.

    Parameters
    ----------
    series : PriceSeries or array_like
        Observations.  A bare array needs ``dt_years`` (defaults to one
        trading day otherwise).
    cfg : TrendConfig
        Window length, polynomial degree and warm-up size.

    Returns
    -------
    TrendEstimate
        For ``k >= min_points - 1`` the trend and slope at ``k`` come from a
        fit to the last ``min(window, k + 1)`` samples.  Earlier indices
        reuse the fit over the first ``min_points`` samples, evaluated at
        ``k``.  Slopes are per year.
    """
    if isinstance(series, PriceSeries):
        x = series.values
        dt_years = series.dt_years
    else:
        x = np.asarray(series, dtype=float)
        if dt_years is None:
            from .series import DAILY
            dt_years = DAILY
    n = x.size
    if n < cfg.min_points:
        raise ValueError(f"series has {n} samples, fewer than min_points={cfg.min_points}")

    trend = np.empty(n)
    slope = np.empty(n)
    p = cfg.min_points
    head = x[:p]
    for k in range(p - 1):
        wv, ws = fit_weights(p, cfg.degree, k)
        trend[k] = wv @ head
        slope[k] = ws @ head
    for k in range(p - 1, min(cfg.window, n)):
        wv, ws = fit_weights(k + 1, cfg.degree)
        seg = x[:k + 1]
        trend[k] = wv @ seg
        slope[k] = ws @ seg
    if n > cfg.window:
        wv, ws = fit_weights(cfg.window, cfg.degree)
        windows = sliding_window_view(x, cfg.window)[1:]
        # explicit sum keeps every output independent of the series length
        trend[cfg.window:] = (windows * wv).sum(axis=1)
        slope[cfg.window:] = (windows * ws).sum(axis=1)

    residual = x - trend
    for arr in (trend, slope, residual):
        arr.flags.writeable = False
    return TrendEstimate(trend, slope / dt_years, residual)
