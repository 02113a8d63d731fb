"""Command-line interface: ``steamcycle analyze|sweep|fit|validate``.

Exit codes: 0 success, 1 spec/validation failure, 2 numeric failure,
3 I/O or parse failure.  Data go to stdout (or ``--out``); diagnostics go
to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from pathlib import Path

from .cycle import CycleSpec, carnot_bound, solve_cycle
from .errors import (
    ConvergenceError,
    CycleSpecError,
    PropertyDomainError,
    RegressionError,
    SteamCycleError,
)
from .regression import fit_log, fit_power, recommend
from .sweep import METRICS, geometric_sequence, run_sweep
from .validation import format_report, run_validation

EXIT_OK, EXIT_SPEC, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

CSV_HEADER = ["p_cond_kPa", "q_b_MJ_per_kg", "w_net_MJ_per_kg", "w_elec_MJ_per_kg",
              "eta_cyc", "eta_pp", "chi4", "exit_superheated"]
CSV_FIELDS = ["p_cond", "q_b", "w_net", "w_elec", "eta_cyc", "eta_pp", "chi4",
              "exit_superheated"]

_PRESSURE_UNITS = {"pa": 1.0, "kpa": 1e3, "mpa": 1e6, "bar": 1e5}
_QUANTITY = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([A-Za-z°]*)\s*$")


class ParseError(Exception):
    pass


def _split_quantity(text):
    m = _QUANTITY.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"cannot parse quantity {text!r}")
    return float(m.group(1)), m.group(2).lower()


def parse_pressure(text, default_unit="kpa"):
    """Parse ``'50bar'``, ``'12.5 kPa'``, ``'5e6Pa'``; bare numbers are kPa."""
    value, unit = _split_quantity(text)
    unit = unit or default_unit
    if unit not in _PRESSURE_UNITS:
        raise argparse.ArgumentTypeError(f"unknown pressure unit {unit!r} in {text!r}")
    return value * _PRESSURE_UNITS[unit]


def parse_temperature(text):
    """Parse ``'600C'``, ``'873.15K'``; bare numbers are degrees Celsius."""
    value, unit = _split_quantity(text)
    if unit in ("", "c", "°c", "degc"):
        return value + 273.15
    if unit == "k":
        return value
    raise argparse.ArgumentTypeError(f"unknown temperature unit {unit!r} in {text!r}")


def parse_pressures(text):
    """Either a comma list or ``start:ratio:count`` (start may carry a unit)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("geometric sweep must be start:ratio:count")
        try:
            ratio = float(parts[1])
            count = int(parts[2])
            return geometric_sequence(parse_pressure(parts[0]), ratio, count)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    values = [parse_pressure(p) for p in text.split(",") if p.strip()]
    if not values:
        raise argparse.ArgumentTypeError("empty pressure list")
    return values


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return f"{v:.9g}"


def _spec_from_args(args):
    return CycleSpec(p_boiler=args.p_boiler, T_max=args.t_max, p_cond=args.p_cond,
                     eta_pump=args.eta_pump, eta_turbine=args.eta_turbine,
                     alpha=args.alpha)


def _emit(args, text):
    if args.out:
        try:
            Path(args.out).write_text(text)
        except OSError as exc:
            raise ParseError(f"cannot write {args.out}: {exc}") from exc
    else:
        sys.stdout.write(text)


# analyze -----------------------------------------------------------------

def _result_metrics(res):
    return {
        "w_p": res.w_p / 1e3, "w_t": res.w_t / 1e3, "w_net": res.w_net / 1e3,
        "q_b": res.q_b / 1e3, "q_c": res.q_c / 1e3, "w_elec": res.w_elec / 1e3,
        "eta_cyc": res.eta_cyc, "eta_pp": res.eta_pp, "chi4": res.chi4,
        "exit_superheated": res.exit_superheated,
    }


def _state_dict(n, st):
    return {"state": n, "p_kPa": st.p / 1e3, "T_C": st.T - 273.15, "h_kJ_per_kg": st.h / 1e3,
            "s_kJ_per_kgK": st.s / 1e3, "v_m3_per_kg": st.v, "phase": st.phase.value,
            "x": st.x}


def render_analysis(res, fmt):
    m = _result_metrics(res)
    if fmt == "json":
        doc = {
            "units": {"energy": "kJ/kg", "efficiency": "fraction"},
            "spec": {"p_boiler_kPa": res.spec.p_boiler / 1e3, "T_max_K": res.spec.T_max,
                     "p_cond_kPa": res.spec.p_cond / 1e3, "eta_pump": res.spec.eta_pump,
                     "eta_turbine": res.spec.eta_turbine, "alpha": res.spec.alpha},
            "metrics": m,
            "carnot_bound": carnot_bound(res.spec),
            "states": [_state_dict(i + 1, s) for i, s in enumerate(res.states)],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "value", "unit"])
        for key, val in m.items():
            unit = "kJ/kg" if key.startswith(("w_", "q_")) else ""
            w.writerow([key, _fmt(val), unit])
        return buf.getvalue()
    lines = [
        "***** Cycle Analysis *****",
        f"Input pump work per kg (kJ/kg) = {m['w_p']:.3f}",
        f"Output turbine work per kg (kJ/kg) = {m['w_t']:.3f}",
        f"Net output work per kg (kJ/kg) = {m['w_net']:.3f}",
        f"Input heat per kg (kJ/kg) = {m['q_b']:.3f}",
        f"Heat rejected per kg (kJ/kg) = {m['q_c']:.3f}",
        f"Cycle efficiency = {100 * m['eta_cyc']:.3f}%",
        f"Electric work per kg (kJ/kg) = {m['w_elec']:.3f}",
        f"Power plant efficiency = {100 * m['eta_pp']:.3f}%",
        f"Turbine exit quality = {100 * m['chi4']:.3f}%",
        f"Turbine exit superheated = {'yes' if m['exit_superheated'] else 'no'}",
        "",
        f"{'state':>5} {'p (kPa)':>12} {'T (C)':>10} {'h (kJ/kg)':>12} "
        f"{'s (kJ/kg/K)':>12}  phase",
    ]
    for i, st in enumerate(res.states, 1):
        lines.append(f"{i:>5} {st.p / 1e3:>12.5g} {st.T - 273.15:>10.3f} "
                     f"{st.h / 1e3:>12.4f} {st.s / 1e3:>12.6f}  {st.phase.value}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args):
    res = solve_cycle(_spec_from_args(args))
    _emit(args, render_analysis(res, args.format))
    return EXIT_OK


# sweep -------------------------------------------------------------------

def sweep_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        vals = [getattr(r, f) for f in CSV_FIELDS]
        vals[0] = vals[0] / 1e3
        w.writerow([_fmt(v) for v in vals])
    return buf.getvalue()


def write_plot_files(rows, directory):
    """One two-column file per metric against log2 of the pressure in kPa."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for metric in METRICS:
        lines = [f"# log2_p_cond_kPa {metric}"]
        for r in rows:
            lines.append(f"{_fmt(math.log2(r.p_cond / 1e3))} {_fmt(getattr(r, metric))}")
        (directory / f"{metric}_vs_log2p.dat").write_text("\n".join(lines) + "\n")


def cmd_sweep(args):
    spec = _spec_from_args(args)
    rows = run_sweep(spec, args.pressures, n_jobs=args.jobs)
    if args.format == "json":
        recs = []
        for r in rows:
            d = dict(r.__dict__)
            d["p_cond_kPa"] = d.pop("p_cond") / 1e3
            recs.append(d)
        text = json.dumps(recs, indent=2) + "\n"
    elif args.format == "text":
        text = sweep_csv(rows).replace(",", "\t")
    else:
        text = sweep_csv(rows)
    _emit(args, text)
    if args.plot_dir:
        try:
            write_plot_files(rows, args.plot_dir)
        except OSError as exc:
            raise ParseError(f"cannot write plot files: {exc}") from exc
    return EXIT_OK


# fit ---------------------------------------------------------------------

def read_sweep_csv(text):
    """Parse a sweep CSV into a dict of column lists (pressure in kPa)."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("line 1: empty CSV") from None
    if header != CSV_HEADER:
        raise ParseError(f"line 1: unexpected header {','.join(header)!r}")
    cols = {f: [] for f in CSV_FIELDS}
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ParseError(f"line {lineno}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        try:
            for f, cell in zip(CSV_FIELDS[:-1], row[:-1]):
                cols[f].append(float(cell))
        except ValueError:
            raise ParseError(f"line {lineno}: non-numeric field in {row!r}") from None
        if row[-1] not in ("true", "false"):
            raise ParseError(f"line {lineno}: exit_superheated must be true/false")
        cols["exit_superheated"].append(row[-1] == "true")
    return cols


def fit_metric(x, y, model):
    pts = list(zip(x, y))
    fits = []
    if model in ("log", "auto"):
        fits.append(fit_log(pts))
    if model in ("power", "auto"):
        fits.append(fit_power(pts))
    return fits, recommend(fits)


def cmd_fit(args):
    if args.csv:
        try:
            text = sys.stdin.read() if args.csv == "-" else Path(args.csv).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {args.csv}: {exc}") from exc
        cols = read_sweep_csv(text)
    else:
        rows = run_sweep(_spec_from_args(args), args.pressures, n_jobs=args.jobs)
        cols = read_sweep_csv(sweep_csv(rows))
    metrics = [args.metric] if args.metric else list(METRICS)
    out = {}
    for metric in metrics:
        fits, best = fit_metric(cols["p_cond"], cols[metric], args.model)
        out[metric] = {"models": [f.__dict__ for f in fits], "recommended": best.kind}

    if args.format == "json":
        text = json.dumps(out, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "kind", "a", "b", "r2_transformed", "r2_original", "recommended"])
        for metric, d in out.items():
            for f in d["models"]:
                w.writerow([metric, f["kind"], _fmt(f["a"]), _fmt(f["b"]),
                            _fmt(f["r2_transformed"]), _fmt(f["r2_original"]),
                            _fmt(f["kind"] == d["recommended"])])
        text = buf.getvalue()
    else:
        lines = []
        for metric, d in out.items():
            lines.append(f"{metric} vs p_cond [kPa]")
            for f in d["models"]:
                form = "a*ln(x) + b" if f["kind"] == "log" else "a*x^b"
                mark = "  <- recommended" if f["kind"] == d["recommended"] else ""
                lines.append(
                    f"  {f['kind']:<5} y = {form:<11} a = {f['a']:.9g}  b = {f['b']:.9g}  "
                    f"R2 = {f['r2_transformed']:.9g} (original space {f['r2_original']:.9g}){mark}")
        text = "\n".join(lines) + "\n"
    _emit(args, text)
    return EXIT_OK


# validate ----------------------------------------------------------------

def cmd_validate(args):
    report = run_validation()
    if args.format == "json":
        text = json.dumps(report.as_dict(), indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "expected", "computed", "tolerance", "relative", "unit", "passed"])
        for c in report.checks:
            w.writerow([c.name, _fmt(c.expected), _fmt(c.computed), _fmt(c.tolerance),
                        _fmt(c.relative), c.unit, _fmt(c.passed)])
        text = buf.getvalue()
    else:
        text = format_report(report) + "\n"
    _emit(args, text)
    return EXIT_OK if report.passed else EXIT_SPEC


# parser ------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p-boiler", type=parse_pressure, default=5.0e6,
                        help="boiler pressure, e.g. 50bar (bare number: kPa)")
    common.add_argument("--t-max", type=parse_temperature, default=873.15,
                        help="turbine inlet temperature, e.g. 600C or 873.15K (bare: degC)")
    common.add_argument("--p-cond", type=parse_pressure, default=12.5e3,
                        help="condenser pressure, e.g. 12.5kPa (bare number: kPa)")
    common.add_argument("--eta-pump", type=float, default=1.0)
    common.add_argument("--eta-turbine", type=float, default=1.0)
    common.add_argument("--alpha", type=float, default=0.9, help="gross loss factor")
    common.add_argument("--pressures", type=parse_pressures,
                        default=geometric_sequence(781.25, 2.0, 9),
                        help="comma list or start:ratio:count (default 0.78125kPa:2:9)")
    common.add_argument("--jobs", type=int, default=None, help="threads for sweeps")
    common.add_argument("--format", choices=("text", "csv", "json"), default=None)
    common.add_argument("--out", default=None, help="write data here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="steamcycle", description="Ideal steam Rankine cycle and condenser-pressure study")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("analyze", parents=[common], help="solve one cycle")
    p.set_defaults(func=cmd_analyze, default_format="text")
    p = sub.add_parser("sweep", parents=[common], help="condenser-pressure sweep as CSV")
    p.add_argument("--plot-dir", default=None,
                   help="also write one two-column file per metric vs log2(p_cond/kPa)")
    p.set_defaults(func=cmd_sweep, default_format="csv")
    p = sub.add_parser("fit", parents=[common], help="fit log/power trendlines to a sweep")
    p.add_argument("csv", nargs="?", default=None,
                   help="sweep CSV ('-' for stdin); if omitted the sweep is computed")
    p.add_argument("--metric", choices=METRICS, default=None,
                   help="metric to fit (default: all)")
    p.add_argument("--model", choices=("log", "power", "auto"), default="auto")
    p.set_defaults(func=cmd_fit, default_format="text")
    p = sub.add_parser("validate", parents=[common], help="run the golden-value checks")
    p.set_defaults(func=cmd_validate, default_format="text")
    return parser


def _diag(exc):
    print(f"steamcycle: error: {exc}", file=sys.stderr)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse reports bad flags with status 2; that is a parse failure here.
        return EXIT_IO if exc.code else EXIT_OK
    args.format = args.format or args.default_format
    try:
        return args.func(args)
    except ParseError as exc:
        _diag(exc)
        return EXIT_IO
    except (CycleSpecError, PropertyDomainError) as exc:
        _diag(exc)
        return EXIT_SPEC
    except (ConvergenceError, RegressionError) as exc:
        _diag(exc)
        return EXIT_NUMERIC
    except SteamCycleError as exc:
        _diag(exc)
        return EXIT_NUMERIC
    except ValueError as exc:
        _diag(exc)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
