"""Python face of the GAVC laboratory: thin re-export of the C++ core."""

from _gavclab import (  # noqa: F401
    InfeasibleError,
    NumericError,
    ParameterError,
    broadcast_sum_rate,
    deterministic_capacity,
    dpc_gamma_threshold,
    dpc_rate,
    maxmin_rate_221,
    maxmin_solver_general,
    optimal_jam_index,
    optimize_dpc,
    randomized_capacity,
    sim_error_rate,
    waterfill,
    watermark_covertext_power,
)

__all__ = [
    "InfeasibleError",
    "NumericError",
    "ParameterError",
    "broadcast_sum_rate",
    "deterministic_capacity",
    "dpc_gamma_threshold",
    "dpc_rate",
    "maxmin_rate_221",
    "maxmin_solver_general",
    "optimal_jam_index",
    "optimize_dpc",
    "randomized_capacity",
    "sim_error_rate",
    "waterfill",
    "watermark_covertext_power",
]
