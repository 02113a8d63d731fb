"""Water/steam properties from the IAPWS-IF97 industrial formulation.

Only the pieces needed for subcritical vapour power cycles are provided:
region 1 (compressed liquid), region 2 (superheated vapour) and the
region 4 saturation line.  Coverage is restricted to p <= 10 MPa and
273.15 K <= T <= 1073.15 K, where regions 1 and 2 meet only along the
saturation line.

All functions work in strict SI units (Pa, K, J/kg, J/(kg K), m3/kg).
The IF97 reference state applies: internal energy and entropy of the
saturated liquid at the triple point are zero.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import AmbiguousPhaseError, ConvergenceError, PropertyDomainError

R_SPECIFIC = 461.526  # J/(kg K)
T_CRIT = 647.096  # K
P_CRIT = 22.064e6  # Pa
T_TRIPLE = 273.16  # K
T_MIN = 273.15  # K, lower temperature bound of regions 1 and 2
T_MAX = 1073.15  # K
P_MAX = 10.0e6  # Pa, upper bound of the envelope served here

MAX_ITER = 200
S_RTOL = 1e-9

# Region 1: compressed liquid, dimensionless Gibbs free energy.
_R1_PSTAR = 16.53e6
_R1_TSTAR = 1386.0
_R1_I = np.array([
    0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3,
    3, 3, 4, 4, 4, 5, 8, 8, 21, 23, 29, 30, 31, 32], dtype=float)
_R1_J = np.array([
    -2, -1, 0, 1, 2, 3, 4, 5, -9, -7, -1, 0, 1, 3, -3, 0, 1, 3, 17, -4,
    0, 6, -5, -2, 10, -8, -11, -6, -29, -31, -38, -39, -40, -41], dtype=float)
_R1_N = np.array([
    0.14632971213167e0, -0.84548187169114e0, -0.37563603672040e1,
    0.33855169168385e1, -0.95791963387872e0, 0.15772038513228e0,
    -0.16616417199501e-1, 0.81214629983568e-3, 0.28319080123804e-3,
    -0.60706301565874e-3, -0.18990068218419e-1, -0.32529748770505e-1,
    -0.21841717175414e-1, -0.52838357969930e-4, -0.47184321073267e-3,
    -0.30001780793026e-3, 0.47661393906987e-4, -0.44141845330846e-5,
    -0.72694996297594e-15, -0.31679644845054e-4, -0.28270797985312e-5,
    -0.85205128120103e-9, -0.22425281908000e-5, -0.65171222895601e-6,
    -0.14341729937924e-12, -0.40516996860117e-6, -0.12734301741641e-8,
    -0.17424871230634e-9, -0.68762131295531e-18, 0.14478307828521e-19,
    0.26335781662795e-22, -0.11947622640071e-22, 0.18228094581404e-23,
    -0.93537087292458e-25])

# Region 2: superheated vapour, ideal-gas plus residual parts.
_R2_PSTAR = 1.0e6
_R2_TSTAR = 540.0
_R2_J0 = np.array([0, 1, -5, -4, -3, -2, -1, 2, 3], dtype=float)
_R2_N0 = np.array([
    -0.96927686500217e1, 0.10086655968018e2, -0.56087911283020e-2,
    0.71452738081455e-1, -0.40710498223928e0, 0.14240819171444e1,
    -0.43839511319450e1, -0.28408632460772e0, 0.21268463753307e-1])
_R2_I = np.array([
    1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 5, 6,
    6, 6, 7, 7, 7, 8, 8, 9, 10, 10, 10, 16, 16, 18, 20, 20, 20, 21, 22, 23,
    24, 24, 24], dtype=float)
_R2_J = np.array([
    0, 1, 2, 3, 6, 1, 2, 4, 7, 36, 0, 1, 3, 6, 35, 1, 2, 3, 7, 3,
    16, 35, 0, 11, 25, 8, 36, 13, 4, 10, 14, 29, 50, 57, 20, 35, 48, 21, 53, 39,
    26, 40, 58], dtype=float)
_R2_N = np.array([
    -0.17731742473213e-2, -0.17834862292358e-1, -0.45996013696365e-1,
    -0.57581259083432e-1, -0.50325278727930e-1, -0.33032641670203e-4,
    -0.18948987516315e-3, -0.39392777243355e-2, -0.43797295650573e-1,
    -0.26674547914087e-4, 0.20481737692309e-7, 0.43870667284435e-6,
    -0.32277677238570e-4, -0.15033924542148e-2, -0.40668253562649e-1,
    -0.78847309559367e-9, 0.12790717852285e-7, 0.48225372718507e-6,
    0.22922076337661e-5, -0.16714766451061e-10, -0.21171472321355e-2,
    -0.23895741934104e2, -0.59059564324270e-17, -0.12621808899101e-5,
    -0.38946842435739e-1, 0.11256211360459e-10, -0.82311340897998e1,
    0.19809712802088e-7, 0.10406965210174e-18, -0.10234747095929e-12,
    -0.10018179379511e-8, -0.80882908646985e-10, 0.10693031879409e0,
    -0.33662250574171e0, 0.89185845355421e-24, 0.30629316876232e-12,
    -0.42002467698208e-5, -0.59056029685639e-25, 0.37826947613457e-5,
    -0.12768608934681e-14, 0.73087610595061e-28, 0.55414715350778e-16,
    -0.94369707241210e-6])

# Region 4: saturation line.
_N4 = (
    None,
    0.11670521452767e4, -0.72421316703206e6, -0.17073846940092e2,
    0.12020824702470e5, -0.32325550322333e7, 0.14915108613530e2,
    -0.48232657361591e4, 0.40511340542057e6, -0.23855557567849e0,
    0.65017534844798e3,
)


class Phase(str, enum.Enum):
    COMPRESSED_LIQUID = "compressed-liquid"
    SUPERHEATED_VAPOR = "superheated-vapor"
    TWO_PHASE = "two-phase"
    SATURATED_LIQUID = "saturated-liquid"
    SATURATED_VAPOR = "saturated-vapor"


@dataclass(frozen=True)
class ThermoState:
    """One water/steam state.

    ``x`` is the vapour mass fraction and is only set for saturated and
    two-phase states.
    """

    p: float
    T: float
    h: float
    s: float
    v: float
    phase: Phase
    x: Optional[float] = None


@dataclass(frozen=True)
class SaturationPoint:
    p_sat: float
    T_sat: float
    hf: float
    hg: float
    sf: float
    sg: float
    vf: float
    vg: float


def _region1(p, T):
    """Return (h, s, v) of compressed liquid from the region 1 Gibbs equation."""
    pi = p / _R1_PSTAR
    tau = _R1_TSTAR / T
    a = 7.1 - pi
    b = tau - 1.222
    ai = a ** _R1_I
    bj = b ** _R1_J
    gamma = np.dot(_R1_N, ai * bj)
    gamma_pi = -np.dot(_R1_N * _R1_I, ai / a * bj)
    gamma_tau = np.dot(_R1_N * _R1_J, ai * bj / b)
    h = R_SPECIFIC * T * tau * gamma_tau
    s = R_SPECIFIC * (tau * gamma_tau - gamma)
    v = R_SPECIFIC * T * pi * gamma_pi / p
    return float(h), float(s), float(v)


def _region2(p, T):
    """Return (h, s, v) of superheated vapour from the region 2 Gibbs equation."""
    pi = p / _R2_PSTAR
    tau = _R2_TSTAR / T
    tj0 = tau ** _R2_J0
    g0 = math.log(pi) + np.dot(_R2_N0, tj0)
    g0_tau = np.dot(_R2_N0 * _R2_J0, tj0 / tau)
    b = tau - 0.5
    pi_i = pi ** _R2_I
    bj = b ** _R2_J
    gr = np.dot(_R2_N, pi_i * bj)
    gr_pi = np.dot(_R2_N * _R2_I, pi_i / pi * bj)
    gr_tau = np.dot(_R2_N * _R2_J, pi_i * bj / b)
    h = R_SPECIFIC * T * tau * (g0_tau + gr_tau)
    s = R_SPECIFIC * (tau * (g0_tau + gr_tau) - (g0 + gr))
    v = R_SPECIFIC * T * pi * (1.0 / pi + gr_pi) / p
    return float(h), float(s), float(v)


def _psat_raw(T):
    n = _N4
    theta = T + n[9] / (T - n[10])
    A = theta * theta + n[1] * theta + n[2]
    B = n[3] * theta * theta + n[4] * theta + n[5]
    C = n[6] * theta * theta + n[7] * theta + n[8]
    return (2.0 * C / (-B + math.sqrt(B * B - 4.0 * A * C))) ** 4 * 1.0e6


def _tsat_raw(p):
    n = _N4
    beta = (p / 1.0e6) ** 0.25
    E = beta * beta + n[3] * beta + n[6]
    F = n[1] * beta * beta + n[4] * beta + n[7]
    G = n[2] * beta * beta + n[5] * beta + n[8]
    D = 2.0 * G / (-F - math.sqrt(F * F - 4.0 * E * G))
    return 0.5 * (n[10] + D - math.sqrt((n[10] + D) ** 2 - 4.0 * (n[9] + n[10] * D)))


P_TRIPLE = _psat_raw(T_TRIPLE)  # ~611.657 Pa


def psat(T):
    """Saturation pressure (Pa) at temperature ``T`` (K)."""
    if not (T_TRIPLE <= T <= T_CRIT):
        raise PropertyDomainError(
            f"saturation temperature {T!r} K outside [{T_TRIPLE}, {T_CRIT}] K")
    return _psat_raw(T)


def tsat(p):
    """Saturation temperature (K) at pressure ``p`` (Pa)."""
    # psat(T_CRIT) rounds a hair above P_CRIT; accept it so the pair stays inverse.
    if not (P_TRIPLE <= p <= P_CRIT * (1 + 1e-9)):
        raise PropertyDomainError(
            f"saturation pressure {p!r} Pa outside [{P_TRIPLE:.6g}, {P_CRIT:.6g}] Pa")
    return min(_tsat_raw(min(p, P_CRIT)), T_CRIT)


def _check_envelope(p, T):
    if not (0.0 < p <= P_MAX):
        raise PropertyDomainError(f"pressure {p!r} Pa outside (0, {P_MAX:.6g}] Pa")
    if not (T_MIN <= T <= T_MAX):
        raise PropertyDomainError(f"temperature {T!r} K outside [{T_MIN}, {T_MAX}] K")


def _is_liquid(p, T):
    # Above the triple-point pressure the liquid is stable below tsat(p).
    return p >= P_TRIPLE and T < _tsat_raw(p)


def props_pt(p, T):
    """Single-phase state at pressure ``p`` and temperature ``T``.

    Raises
    ------
    PropertyDomainError
        If (p, T) lies outside the supported envelope.
    AmbiguousPhaseError
        If T equals the saturation temperature at p; use :func:`state_px`.
    """
    _check_envelope(p, T)
    if p >= P_TRIPLE:
        ts = _tsat_raw(p)
        if abs(T - ts) <= 1e-12 * ts:
            raise AmbiguousPhaseError(
                f"T={T!r} K is the saturation temperature at p={p!r} Pa; "
                "specify quality with state_px instead")
    if _is_liquid(p, T):
        h, s, v = _region1(p, T)
        return ThermoState(p, T, h, s, v, Phase.COMPRESSED_LIQUID)
    h, s, v = _region2(p, T)
    return ThermoState(p, T, h, s, v, Phase.SUPERHEATED_VAPOR)


def sat_props(p):
    """Saturated liquid and vapour properties at pressure ``p``."""
    if not (P_TRIPLE <= p < P_CRIT):
        raise PropertyDomainError(
            f"saturation pressure {p!r} Pa outside [{P_TRIPLE:.6g}, {P_CRIT:.6g}) Pa")
    if p > P_MAX:
        raise PropertyDomainError(f"pressure {p!r} Pa above supported {P_MAX:.6g} Pa")
    T = _tsat_raw(p)
    hf, sf, vf = _region1(p, T)
    hg, sg, vg = _region2(p, T)
    return SaturationPoint(p, T, hf, hg, sf, sg, vf, vg)


def _mixture(sat, x):
    if x == 0.0:
        phase = Phase.SATURATED_LIQUID
    elif x == 1.0:
        phase = Phase.SATURATED_VAPOR
    else:
        phase = Phase.TWO_PHASE
    return ThermoState(
        p=sat.p_sat,
        T=sat.T_sat,
        h=sat.hf + x * (sat.hg - sat.hf),
        s=sat.sf + x * (sat.sg - sat.sf),
        v=sat.vf + x * (sat.vg - sat.vf),
        phase=phase,
        x=x,
    )


def state_px(p, x):
    """Saturated or two-phase state at pressure ``p`` and quality ``x``."""
    if not (0.0 <= x <= 1.0):
        raise PropertyDomainError(f"quality {x!r} outside [0, 1]")
    return _mixture(sat_props(p), float(x))


def _solve_temperature(p, target, index, lo, hi, region, label):
    """Find T in [lo, hi] where property ``index`` of ``region`` equals ``target``."""
    def resid(T):
        return region(p, T)[index] - target

    f_lo, f_hi = resid(lo), resid(hi)
    if f_lo * f_hi > 0.0:
        raise PropertyDomainError(
            f"{label}={target!r} is not reachable at p={p!r} Pa "
            f"in [{lo:.6g}, {hi:.6g}] K")
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    try:
        T, info = brentq(resid, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps,
                         maxiter=MAX_ITER, full_output=True, disp=False)
    except RuntimeError as exc:  # pragma: no cover - brentq only raises when disp=True
        raise ConvergenceError(str(exc)) from exc
    if not info.converged:
        raise ConvergenceError(
            f"{label} inversion at p={p!r} Pa did not converge in {MAX_ITER} iterations")
    err = abs(resid(T))
    if err > S_RTOL * max(abs(target), 1.0):
        raise ConvergenceError(
            f"{label} inversion at p={p!r} Pa stalled with residual {err:.3e}")
    return T


def _invert(p, value, index, label):
    if not (0.0 < p <= P_MAX):
        raise PropertyDomainError(f"pressure {p!r} Pa outside (0, {P_MAX:.6g}] Pa")

    if p < P_TRIPLE:
        T = _solve_temperature(p, value, index, T_MIN, T_MAX, _region2, label)
        h, s, v = _region2(p, T)
        return ThermoState(p, T, h, s, v, Phase.SUPERHEATED_VAPOR)

    sat = sat_props(p)
    lo_sat = (sat.hf, sat.sf)[index]
    hi_sat = (sat.hg, sat.sg)[index]
    if lo_sat <= value <= hi_sat:
        x = (value - lo_sat) / (hi_sat - lo_sat)
        return _mixture(sat, x)

    eps = 1e-9 * sat.T_sat
    if value > hi_sat:
        T = _solve_temperature(p, value, index, sat.T_sat + eps, T_MAX, _region2, label)
        h, s, v = _region2(p, T)
        return ThermoState(p, T, h, s, v, Phase.SUPERHEATED_VAPOR)
    T = _solve_temperature(p, value, index, T_MIN, sat.T_sat - eps, _region1, label)
    h, s, v = _region1(p, T)
    return ThermoState(p, T, h, s, v, Phase.COMPRESSED_LIQUID)


def state_ps(p, s):
    """State at pressure ``p`` (Pa) with specific entropy ``s`` (J/(kg K)).

    Inside the saturation dome the quality follows directly from the lever
    rule.  Outside it, temperature is found by bracketed root-finding on the
    forward equations: between tsat(p) and 1073.15 K for vapour, between
    273.15 K and tsat(p) for liquid.
    """
    return _invert(p, s, 1, "entropy")


def state_ph(p, h):
    """State at pressure ``p`` (Pa) with specific enthalpy ``h`` (J/kg)."""
    return _invert(p, h, 0, "enthalpy")


def extended_quality(p, s):
    """Lever-rule quality (s - sf) / (sg - sf), not clipped to [0, 1].

    Equals the vapour mass fraction inside the dome and exceeds 1 for
    superheated vapour.
    """
    sat = sat_props(p)
    return (s - sat.sf) / (sat.sg - sat.sf)
