"""Golden-value self-check of the property layer, base cycle, sweep and fits."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import asdict, dataclass, field

from . import steam_properties as sp
from .cycle import CycleSpec, carnot_bound, solve_cycle
from .regression import fit_log, fit_power
from .sweep import find_saturated_exit_pressure, default_pressures, run_sweep

# Published verification points of the IF97 regions: (p Pa, T K) -> h J/kg, s J/(kg K), v m3/kg.
REGION1_POINTS = [
    (3e6, 300.0, 0.115331273e6, 0.392294792e3, 0.100215168e-2),
    (80e6, 300.0, 0.184142828e6, 0.368563852e3, 0.971180894e-3),
    (3e6, 500.0, 0.975542239e6, 0.258041912e4, 0.120241800e-2),
]
REGION2_POINTS = [
    (3500.0, 300.0, 0.254991145e7, 0.852238967e4, 0.394913866e2),
    (3500.0, 700.0, 0.333568375e7, 0.101749996e5, 0.923015898e2),
    (30e6, 700.0, 0.263149474e7, 0.517540298e4, 0.542946619e-2),
]
PSAT_POINTS = [(300.0, 0.353658941e4), (500.0, 0.263889776e7), (600.0, 0.123443146e8)]
TSAT_POINTS = [(0.1e6, 0.372755919e3), (1e6, 0.453035632e3), (10e6, 0.584149488e3)]

TABLE_RTOL = 1e-6


@dataclass
class Check:
    name: str
    expected: float
    computed: float
    tolerance: float
    relative: bool = False
    unit: str = ""

    @property
    def passed(self):
        if not math.isfinite(self.computed):
            return False
        err = abs(self.computed - self.expected)
        if self.relative:
            err /= abs(self.expected)
        return err <= self.tolerance

    def as_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, *args, **kwargs):
        self.checks.append(Check(*args, **kwargs))

    def as_dict(self):
        return {"passed": self.passed, "checks": [c.as_dict() for c in self.checks]}


def _add_table_checks(report):
    for p, T, h, s, v in REGION1_POINTS:
        H, S, V = sp._region1(p, T)
        tag = f"liquid eq. p={p / 1e6:g} MPa T={T:g} K"
        report.add(f"{tag} h", h, H, TABLE_RTOL, True, "J/kg")
        report.add(f"{tag} s", s, S, TABLE_RTOL, True, "J/(kg K)")
        report.add(f"{tag} v", v, V, TABLE_RTOL, True, "m3/kg")
    for p, T, h, s, v in REGION2_POINTS:
        H, S, V = sp._region2(p, T)
        tag = f"vapour eq. p={p / 1e6:g} MPa T={T:g} K"
        report.add(f"{tag} h", h, H, TABLE_RTOL, True, "J/kg")
        report.add(f"{tag} s", s, S, TABLE_RTOL, True, "J/(kg K)")
        report.add(f"{tag} v", v, V, TABLE_RTOL, True, "m3/kg")
    for T, p in PSAT_POINTS:
        report.add(f"psat({T:g} K)", p, sp.psat(T), TABLE_RTOL, True, "Pa")
    for p, T in TSAT_POINTS:
        report.add(f"tsat({p / 1e6:g} MPa)", T, sp.tsat(p), TABLE_RTOL, True, "K")


def run_validation() -> ValidationReport:
    """Run every golden check on the base case and return the full report.

    Failed checks are recorded, not raised.
    """
    spec = CycleSpec()
    report = ValidationReport()

    base = solve_cycle(spec)
    kj = 1e-3
    report.add("base eta_cyc", 38.597, base.eta_cyc * 100, 0.05, unit="%")
    report.add("base w_p", 5.043, base.w_p * kj, 0.05, unit="kJ/kg")
    report.add("base w_t", 1336.989, base.w_t * kj, 2.0, unit="kJ/kg")
    report.add("base w_net", 1331.946, base.w_net * kj, 2.0, unit="kJ/kg")
    report.add("base q_b", 3450.927, base.q_b * kj, 3.0, unit="kJ/kg")
    report.add("base q_c", 2118.981, base.q_c * kj, 3.0, unit="kJ/kg")

    report.add("T1", 50.28, base.state1.T - 273.15, 0.1, unit="degC")
    report.add("h1", 210.5, base.state1.h * kj, 0.7, unit="kJ/kg")
    report.add("h2", 215.56, base.state2.h * kj, 0.7, unit="kJ/kg")
    report.add("h3", 3666.5, base.state3.h * kj, 1.5, unit="kJ/kg")
    report.add("s3", 7.2589, base.state3.s * kj, 0.002, unit="kJ/(kg K)")
    report.add("h4", 2329.5, base.state4.h * kj, 1.5, unit="kJ/kg")
    report.add("x4", 88.96, base.chi4 * 100, 0.10, unit="%")

    pressures = default_pressures()
    rows = run_sweep(spec, pressures)
    report.add("chi4 at 0.78125 kPa", 79.95, rows[0].chi4 * 100, 0.3, unit="%")
    report.add("chi4 at 100 kPa", 98.34, rows[7].chi4 * 100, 0.3, unit="%")

    p_x = find_saturated_exit_pressure(spec, (100e3, 200e3))
    report.add("saturated-exit pressure", 134.945, p_x * kj, 1.5, unit="kPa")
    chi_x = solve_cycle(dataclasses.replace(spec, p_cond=p_x)).chi4
    report.add("|chi4 - 1| at crossover", 0.0, abs(chi_x - 1.0), 1e-4)

    x = [r.p_cond * kj for r in rows]
    q = fit_log(list(zip(x, [r.q_b for r in rows])))
    w = fit_log(list(zip(x, [r.w_net for r in rows])))
    e = fit_log(list(zip(x, [r.eta_cyc for r in rows])))
    chi_pts = list(zip(x, [r.chi4 for r in rows]))
    xp = fit_power(chi_pts)
    xl = fit_log(chi_pts)
    report.add("q_b log slope", -0.087356, q.a, 0.02, True, "MJ/kg")
    report.add("q_b log intercept", 3.651362, q.b, 0.01, True, "MJ/kg")
    report.add("w_net log slope", -0.13474, w.a, 0.02, True, "MJ/kg")
    report.add("w_net log intercept", 1.64988, w.b, 0.01, True, "MJ/kg")
    report.add("eta_cyc log slope", -0.029895, e.a, 0.02, True)
    report.add("eta_cyc log intercept", 0.454749, e.b, 0.01, True)
    report.add("chi4 power prefactor", 0.802021, xp.a, 0.01, True)
    report.add("chi4 power exponent", 0.043447, xp.b, 0.02, True)
    report.add("chi4 power R2", 0.995394, xp.r2_transformed, 0.003)
    report.add("chi4 log R2", 0.990295, xl.r2_transformed, 0.003)
    report.add("chi4 prefers power family", 1.0,
               float(xp.r2_transformed > xl.r2_transformed), 0.0)

    report.add("psat(30 degC)", 4.24, sp.psat(303.15) * kj, 0.02, unit="kPa")

    _add_table_checks(report)

    results = [solve_cycle(dataclasses.replace(spec, p_cond=p)) for p in pressures]
    closure = max(abs(r.q_b - r.w_net - r.q_c) / r.q_b for r in results)
    report.add("first-law closure (max rel.)", 0.0, closure, 1e-9)
    carnot_ok = all(r.eta_cyc < carnot_bound(r.spec) for r in results)
    report.add("Carnot dominance on sweep", 1.0, float(carnot_ok), 0.0)

    def strictly(seq, sign):
        return all(sign * (b - a) > 0 for a, b in zip(seq, seq[1:]))

    mono = (strictly([r.q_b for r in rows], -1) and strictly([r.w_net for r in rows], -1)
            and strictly([r.eta_cyc for r in rows], -1) and strictly([r.chi4 for r in rows], 1))
    report.add("sweep monotonicity", 1.0, float(mono), 0.0)
    return report


def format_report(report: ValidationReport) -> str:
    lines = []
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        tol = f"{c.tolerance:g}{' rel' if c.relative else ''}"
        lines.append(
            f"[{'PASS' if c.passed else 'FAIL'}] {c.name:<{width}}  "
            f"expected={c.expected:.9g} computed={c.computed:.9g} tol={tol} {c.unit}".rstrip())
    n_pass = sum(c.passed for c in report.checks)
    lines.append(f"{n_pass}/{len(report.checks)} checks passed"
                 f" -> {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)
