"""Risk-free rate paths and the cash-account growth factor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import DAILY


@dataclass(frozen=True)
class RatePath:
    """Annualized risk-free rates, one per sample (0.05 means 5% a year).

    The rate quoted at sample ``k`` applies over ``[k, k+1)``.
    """

    rates: np.ndarray
    dt_years: float = DAILY

    def __post_init__(self):
        rates = np.array(self.rates, dtype=float).reshape(-1)
        if rates.size == 0:
            raise ValueError("rate path is empty")
        if not np.all(np.isfinite(rates)):
            raise ValueError("rates must be finite")
        if not (self.dt_years > 0):
            raise ValueError("dt_years must be positive")
        rates.flags.writeable = False
        object.__setattr__(self, "rates", rates)

    @classmethod
    def constant(cls, rate: float, n: int, dt_years: float = DAILY) -> "RatePath":
        return cls(np.full(n, float(rate)), dt_years)

    def __len__(self):
        return self.rates.size

    def log_growth(self) -> np.ndarray:
        """Cumulative ``sum_{j<k} r_j dt`` for every k (left-rectangle rule)."""
        out = np.zeros(self.rates.size)
        np.cumsum(self.rates[:-1] * self.dt_years, out=out[1:])
        return out

    def growth(self) -> np.ndarray:
        """Growth factor of the cash account at every sample; 1 at k = 0."""
        return np.exp(self.log_growth())


def growth_factor(path: RatePath, k: int) -> float:
    """``exp(sum_{j<k} rates[j] * dt)``; exactly 1.0 at ``k = 0``."""
    if not 0 <= k < len(path):
        raise IndexError(f"sample index {k} outside [0, {len(path) - 1}]")
    return float(path.growth()[k])


def target_value(path: RatePath, pi0: float, k: int) -> float:
    """Value at ``k`` of a riskless portfolio worth ``pi0`` at the start."""
    return pi0 * growth_factor(path, k)
