"""Model-free delta hedging on trends of price series."""

__version__ = "0.1.0"

from .hedge import (CarryParams, DegenerateUnderlying, HedgeInit, HedgePath, ReplicationReport,
                    SingularCarryDenominator, SingularInitialization, bsm_delta, bsm_price,
                    delta_path, delta_path_carry, init_hedge, replication_report)
from .jump import JumpConfig, JumpEvent, JumpForecast, PolicyConfig, forecast_jumps, shape_delta
from .rates import RatePath, growth_factor, target_value
from .series import PriceSeries, SynthSpec, generate, load_csv, write_csv
from .trend import TrendConfig, TrendEstimate, estimate_trend

__all__ = [
    "CarryParams", "DegenerateUnderlying", "HedgeInit", "HedgePath", "ReplicationReport",
    "SingularCarryDenominator", "SingularInitialization", "bsm_delta", "bsm_price",
    "delta_path", "delta_path_carry", "init_hedge", "replication_report",
    "JumpConfig", "JumpEvent", "JumpForecast", "PolicyConfig", "forecast_jumps", "shape_delta",
    "RatePath", "growth_factor", "target_value",
    "PriceSeries", "SynthSpec", "generate", "load_csv", "write_csv",
    "TrendConfig", "TrendEstimate", "estimate_trend",
]
