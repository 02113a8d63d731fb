"""Ideal steam Rankine cycle simulator with condenser-pressure sweeps and trendline fits."""
from .cycle import CycleResult, CycleSpec, carnot_bound, solve_cycle
from .regression import FitModel, LogTrendline, PowerTrendline, fit_log, fit_power, r_squared
from .steam_properties import (
    Phase,
    SaturationPoint,
    ThermoState,
    extended_quality,
    props_pt,
    psat,
    sat_props,
    state_ph,
    state_ps,
    state_px,
    tsat,
)
from .sweep import (
    CondenserSweep,
    SweepRow,
    default_pressures,
    find_saturated_exit_pressure,
    geometric_sequence,
    run_sweep,
)

__version__ = "0.1.0"
