"""Ideal four-stage steam Rankine cycle: pump, boiler/superheater, turbine, condenser."""
from __future__ import annotations

from dataclasses import dataclass

from . import steam_properties as sp
from .errors import CycleSpecError, SteamCycleError, annotate
from .steam_properties import ThermoState


@dataclass(frozen=True)
class CycleSpec:
    """Cycle definition in SI units.

    Defaults reproduce the base case: 50 bar boiler, 600 degC turbine inlet,
    12.5 kPa condenser, isentropic pump and turbine, 90 % gross loss factor.
    """

    p_boiler: float = 5.0e6
    T_max: float = 873.15
    p_cond: float = 12.5e3
    eta_pump: float = 1.0
    eta_turbine: float = 1.0
    alpha: float = 0.9

    def __post_init__(self):
        if not (sp.P_TRIPLE <= self.p_cond):
            raise CycleSpecError(
                f"condenser pressure {self.p_cond!r} Pa below the triple-point "
                f"pressure {sp.P_TRIPLE:.6g} Pa")
        if not (self.p_cond < self.p_boiler):
            raise CycleSpecError(
                f"pressure ordering violated: p_cond ({self.p_cond!r} Pa) must be "
                f"below p_boiler ({self.p_boiler!r} Pa)")
        if self.p_boiler > sp.P_MAX:
            raise CycleSpecError(
                f"p_boiler {self.p_boiler!r} Pa above supported {sp.P_MAX:.6g} Pa")
        if self.T_max > sp.T_MAX:
            raise CycleSpecError(
                f"T_max {self.T_max!r} K above supported {sp.T_MAX} K")
        if not (self.T_max > sp.tsat(self.p_boiler)):
            raise CycleSpecError(
                f"T_max ({self.T_max!r} K) must exceed the boiler saturation "
                f"temperature ({sp.tsat(self.p_boiler):.6g} K) so state 3 is superheated")
        for name in ("eta_pump", "eta_turbine"):
            val = getattr(self, name)
            if not (0.0 < val <= 1.0):
                raise CycleSpecError(f"{name} must lie in (0, 1], got {val!r}")
        if not (0.0 <= self.alpha <= 1.0):
            raise CycleSpecError(f"alpha must lie in [0, 1], got {self.alpha!r}")


@dataclass(frozen=True)
class CycleResult:
    """Solved cycle. Specific energies in J/kg, efficiencies as fractions."""

    spec: CycleSpec
    state1: ThermoState
    state2: ThermoState
    state3: ThermoState
    state4: ThermoState
    w_p: float
    w_t: float
    w_net: float
    q_b: float
    q_c: float
    w_elec: float
    eta_cyc: float
    eta_pp: float
    chi4: float
    exit_superheated: bool

    @property
    def states(self):
        return (self.state1, self.state2, self.state3, self.state4)


def _labelled(n, fn, *args):
    try:
        return fn(*args)
    except SteamCycleError as exc:
        raise annotate(exc, f"state {n}")


def solve_cycle(spec: CycleSpec) -> CycleResult:
    """Solve the four cycle states and every per-unit-mass metric."""
    state1 = _labelled(1, sp.state_px, spec.p_cond, 0.0)

    state2s = _labelled(2, sp.state_ps, spec.p_boiler, state1.s)
    if spec.eta_pump == 1.0:
        state2 = state2s
    else:
        h2 = state1.h + (state2s.h - state1.h) / spec.eta_pump
        state2 = _labelled(2, sp.state_ph, spec.p_boiler, h2)

    state3 = _labelled(3, sp.props_pt, spec.p_boiler, spec.T_max)

    state4s = _labelled(4, sp.state_ps, spec.p_cond, state3.s)
    if spec.eta_turbine == 1.0:
        state4 = state4s
    else:
        h4 = state3.h - spec.eta_turbine * (state3.h - state4s.h)
        state4 = _labelled(4, sp.state_ph, spec.p_cond, h4)

    w_p = state2.h - state1.h
    q_b = state3.h - state2.h
    w_t = state3.h - state4.h
    q_c = state4.h - state1.h
    w_net = w_t - w_p
    eta_cyc = w_net / q_b
    chi4 = _labelled(4, sp.extended_quality, spec.p_cond, state4.s)

    return CycleResult(
        spec=spec,
        state1=state1,
        state2=state2,
        state3=state3,
        state4=state4,
        w_p=w_p,
        w_t=w_t,
        w_net=w_net,
        q_b=q_b,
        q_c=q_c,
        w_elec=spec.alpha * w_net,
        eta_cyc=eta_cyc,
        eta_pp=spec.alpha * eta_cyc,
        chi4=chi4,
        exit_superheated=chi4 > 1.0,
    )


def carnot_bound(spec: CycleSpec) -> float:
    """Carnot efficiency between the condensation temperature and T_max."""
    return 1.0 - sp.tsat(spec.p_cond) / spec.T_max
