"""Condenser-pressure parametric study."""
from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cycle import CycleResult, CycleSpec, solve_cycle
from .errors import BracketError, ConvergenceError, SteamCycleError, annotate
from .steam_properties import P_TRIPLE

DEFAULT_START = 781.25  # Pa
DEFAULT_RATIO = 2.0
DEFAULT_COUNT = 9

METRICS = ("q_b", "w_net", "w_elec", "eta_cyc", "eta_pp", "chi4")


@dataclass(frozen=True)
class SweepRow:
    """One sweep point. Energies in MJ/kg, efficiencies as fractions."""

    p_cond: float
    q_b: float
    w_net: float
    w_elec: float
    eta_cyc: float
    eta_pp: float
    chi4: float
    exit_superheated: bool

    @classmethod
    def from_result(cls, result: CycleResult) -> "SweepRow":
        return cls(
            p_cond=result.spec.p_cond,
            q_b=result.q_b / 1e6,
            w_net=result.w_net / 1e6,
            w_elec=result.w_elec / 1e6,
            eta_cyc=result.eta_cyc,
            eta_pp=result.eta_pp,
            chi4=result.chi4,
            exit_superheated=result.exit_superheated,
        )


def geometric_sequence(start, ratio, count):
    """Return ``[start * ratio**k for k in range(count)]``."""
    if not start > 0:
        raise ValueError(f"start must be positive, got {start!r}")
    if not ratio > 0:
        raise ValueError(f"ratio must be positive, got {ratio!r}")
    if int(count) != count or count < 1:
        raise ValueError(f"count must be a positive integer, got {count!r}")
    return [start * ratio ** k for k in range(int(count))]


def default_pressures():
    """The nine condenser pressures 0.78125 kPa ... 200 kPa, in Pa."""
    return geometric_sequence(DEFAULT_START, DEFAULT_RATIO, DEFAULT_COUNT)


def _solve_at(base, p):
    try:
        return solve_cycle(dataclasses.replace(base, p_cond=p))
    except SteamCycleError as exc:
        raise annotate(exc, f"p_cond={p!r} Pa")


def run_sweep(base: CycleSpec, pressures, n_jobs=None):
    """Solve the cycle at every condenser pressure and return rows sorted by pressure.

    ``n_jobs`` > 1 evaluates points on a thread pool; row order and values do
    not depend on it.
    """
    ps = sorted(float(p) for p in pressures)
    if len(set(ps)) != len(ps):
        raise ValueError("duplicate condenser pressures in sweep")
    if n_jobs and n_jobs > 1 and len(ps) > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(lambda p: _solve_at(base, p), ps))
    else:
        results = [_solve_at(base, p) for p in ps]
    return [SweepRow.from_result(r) for r in results]


def find_saturated_exit_pressure(base: CycleSpec, bracket=(100e3, 200e3),
                                 tol=1.0, max_iter=100):
    """Condenser pressure (Pa) at which the turbine exhausts saturated vapour.

    Bisects ``chi4(p) - 1`` inside ``bracket`` until the interval is narrower
    than ``tol`` Pa.
    """
    lo, hi = sorted(float(b) for b in bracket)

    def g(p):
        return _solve_at(base, p).chi4 - 1.0

    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0.0:
        raise BracketError(
            f"bracket [{lo:.6g}, {hi:.6g}] Pa does not straddle chi4 = 1 "
            f"(chi4 - 1 = {g_lo:.4g}, {g_hi:.4g})")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        g_mid = g(mid)
        if g_mid == 0.0:
            return mid
        if (g_mid < 0.0) == (g_lo < 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
    raise ConvergenceError(
        f"crossover bisection did not reach {tol} Pa in {max_iter} iterations")


class CondenserSweep(TransformerMixin, BaseEstimator):
    """Map condenser pressures (Pa) to cycle performance metrics.

    Parameters mirror :class:`CycleSpec` except the condenser pressure,
    which is supplied row-wise to :meth:`transform`.

    Output columns are ``q_b, w_net, w_elec`` in MJ/kg followed by
    ``eta_cyc, eta_pp, chi4`` as fractions, in input row order.
    """

    def __init__(self, p_boiler=5.0e6, T_max=873.15, eta_pump=1.0,
                 eta_turbine=1.0, alpha=0.9, n_jobs=None):
        self.p_boiler = p_boiler
        self.T_max = T_max
        self.eta_pump = eta_pump
        self.eta_turbine = eta_turbine
        self.alpha = alpha
        self.n_jobs = n_jobs

    def fit(self, X=None, y=None):
        # p_cond is a placeholder; transform substitutes each row's pressure.
        self.spec_ = CycleSpec(
            p_boiler=self.p_boiler, T_max=self.T_max, p_cond=P_TRIPLE,
            eta_pump=self.eta_pump, eta_turbine=self.eta_turbine, alpha=self.alpha)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "spec_")
        X = check_array(X, ensure_2d=False, dtype=float, ensure_min_samples=0)
        if X.ndim == 2:
            if X.shape[1] != 1:
                raise ValueError(f"expected a single pressure column, got {X.shape[1]}")
            X = X[:, 0]
        if self.n_jobs and self.n_jobs > 1:
            with ThreadPoolExecutor(max_workers=self.n_jobs) as pool:
                results = list(pool.map(lambda p: _solve_at(self.spec_, p), X))
        else:
            results = [_solve_at(self.spec_, p) for p in X]
        rows = [SweepRow.from_result(r) for r in results]
        out = np.array([[getattr(r, m) for m in METRICS] for r in rows], dtype=float)
        return out.reshape(len(rows), len(METRICS))

    def get_feature_names_out(self, input_features=None):
        return np.array(METRICS, dtype=object)
