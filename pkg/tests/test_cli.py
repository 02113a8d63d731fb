import json
import math
import re

import pytest

from steamcycle import steam_properties as sp
from steamcycle.cli import (
    CSV_HEADER,
    EXIT_IO,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_SPEC,
    ParseError,
    main,
    parse_pressure,
    parse_pressures,
    parse_temperature,
    read_sweep_csv,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def text_value(out, label):
    m = re.search(re.escape(label) + r"[^=]*= ([-\d.]+)", out)
    assert m, label
    return float(m.group(1))


class TestParsing:
    @pytest.mark.parametrize("text, pa", [
        ("12.5", 12.5e3), ("12.5kPa", 12.5e3), ("50bar", 5e6), ("5 MPa", 5e6), ("611.7Pa", 611.7)])
    def test_pressure_units(self, text, pa):
        assert parse_pressure(text) == pytest.approx(pa, rel=1e-15)

    @pytest.mark.parametrize("text, kelvin", [
        ("600", 873.15), ("600C", 873.15), ("600°C", 873.15), ("873.15K", 873.15)])
    def test_temperature_units(self, text, kelvin):
        assert parse_temperature(text) == pytest.approx(kelvin, rel=1e-15)

    def test_pressure_list_forms(self):
        assert parse_pressures("0.78125:2:9")[-1] == pytest.approx(200e3)
        assert parse_pressures("10, 20kPa,1bar") == pytest.approx([10e3, 20e3, 100e3])

    @pytest.mark.parametrize("bad", ["", "12 furlongs", "abc", "1:2"])
    def test_rejects_garbage(self, bad):
        with pytest.raises(Exception):
            parse_pressures(bad)


class TestAnalyze:
    def test_default_text(self, capsys):
        code, out, err = run(capsys, "analyze")
        assert code == EXIT_OK and err == ""
        assert "Cycle Analysis" in out
        assert text_value(out, "Net output work per kg") == pytest.approx(1331.946, abs=2)
        assert text_value(out, "Cycle efficiency") == pytest.approx(38.597, abs=0.05)

    def test_json_matches_text(self, capsys):
        _, text, _ = run(capsys, "analyze")
        code, out, _ = run(capsys, "analyze", "--format", "json")
        assert code == EXIT_OK
        metrics = json.loads(out)["metrics"]
        assert set(metrics) == {"w_p", "w_t", "w_net", "q_b", "q_c", "w_elec",
                                "eta_cyc", "eta_pp", "chi4", "exit_superheated"}
        labels = {"w_p": "Input pump work", "w_t": "Output turbine work",
                  "w_net": "Net output work", "q_b": "Input heat", "q_c": "Heat rejected",
                  "w_elec": "Electric work"}
        for key, label in labels.items():
            assert metrics[key] == pytest.approx(text_value(text, label), abs=5e-4)
        assert 100 * metrics["eta_cyc"] == pytest.approx(text_value(text, "Cycle efficiency"), abs=5e-4)
        assert 100 * metrics["chi4"] == pytest.approx(text_value(text, "Turbine exit quality"), abs=5e-4)

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "analyze", "--format", "csv")
        assert code == EXIT_OK
        assert out.splitlines()[0] == "metric,value,unit"
        assert len(out.splitlines()) == 11

    def test_pressure_ordering_rejected(self, capsys):
        code, out, err = run(capsys, "analyze", "--p-cond", "50bar")
        assert code == EXIT_SPEC
        assert out == ""
        assert "pressure ordering" in err

    def test_unknown_flag_is_parse_error(self, capsys):
        code, out, _ = run(capsys, "analyze", "--bogus")
        assert code == EXIT_IO and out == ""

    def test_bad_unit_is_parse_error(self, capsys):
        code, _, _ = run(capsys, "analyze", "--p-cond", "12 psi")
        assert code == EXIT_IO


class TestSweep:
    def test_default_sweep(self, capsys, base_rows):
        code, out, err = run(capsys, "sweep")
        assert code == EXIT_OK and err == ""
        lines = out.splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert lines[0] == ("p_cond_kPa,q_b_MJ_per_kg,w_net_MJ_per_kg,w_elec_MJ_per_kg,"
                            "eta_cyc,eta_pp,chi4,exit_superheated")
        rows = [l.split(",") for l in lines[1:]]
        assert len(rows) == 9
        assert float(rows[0][0]) == 0.78125 and float(rows[-1][0]) == 200
        assert [r[-1] for r in rows] == ["false"] * 8 + ["true"]
        # nine significant digits survive the text round trip
        assert float(rows[4][4]) == float(f"{base_rows[4].eta_cyc:.9g}")

    def test_single_pressure(self, capsys):
        code, out, _ = run(capsys, "sweep", "--pressures", "12.5")
        assert code == EXIT_OK
        assert len(out.splitlines()) == 2

    def test_rerun_is_byte_identical(self, capsys):
        first = run(capsys, "sweep", "--jobs", "4")[1]
        second = run(capsys, "sweep")[1]
        assert first == second

    def test_bar_and_kpa_equivalent(self, capsys):
        a = run(capsys, "sweep", "--p-boiler", "50bar")[1]
        b = run(capsys, "sweep", "--p-boiler", "5000kPa")[1]
        assert a == b

    def test_json_and_text(self, capsys):
        code, out, _ = run(capsys, "sweep", "--format", "json", "--pressures", "10,20")
        assert code == EXIT_OK
        recs = json.loads(out)
        assert [r["p_cond_kPa"] for r in recs] == [10, 20]
        code, out, _ = run(capsys, "sweep", "--format", "text", "--pressures", "10")
        assert out.splitlines()[0].split("\t") == CSV_HEADER

    def test_out_file_and_plot_files(self, capsys, tmp_path):
        dest = tmp_path / "sweep.csv"
        code, out, _ = run(capsys, "sweep", "--out", str(dest), "--plot-dir", str(tmp_path / "plots"))
        assert code == EXIT_OK and out == ""
        assert dest.read_text().startswith("p_cond_kPa,")
        files = sorted(p.name for p in (tmp_path / "plots").iterdir())
        assert len(files) == 6
        data = (tmp_path / "plots" / "eta_cyc_vs_log2p.dat").read_text().splitlines()
        xs = [float(l.split()[0]) for l in data[1:]]
        assert xs == pytest.approx([math.log2(0.78125) + k for k in range(9)], rel=1e-9, abs=1e-12)

    def test_unwritable_output(self, capsys, tmp_path):
        code, out, err = run(capsys, "sweep", "--out", str(tmp_path / "missing" / "x.csv"))
        assert code == EXIT_IO
        assert out == "" and "cannot write" in err

    def test_bad_point_names_pressure(self, capsys):
        code, out, err = run(capsys, "sweep", "--pressures", "10,6000")
        assert code == EXIT_SPEC
        assert out == "" and "p_cond=6000000.0 Pa" in err


class TestFit:
    def test_default_fits(self, capsys):
        code, out, _ = run(capsys, "fit", "--format", "json")
        assert code == EXIT_OK
        doc = json.loads(out)
        assert set(doc) == {"q_b", "w_net", "w_elec", "eta_cyc", "eta_pp", "chi4"}
        log = next(m for m in doc["w_net"]["models"] if m["kind"] == "log")
        assert log["a"] == pytest.approx(-0.13474, rel=0.02)
        assert log["b"] == pytest.approx(1.64988, rel=0.01)
        assert doc["chi4"]["recommended"] == "power"

    def test_text_marks_recommendation(self, capsys):
        code, out, _ = run(capsys, "fit", "--metric", "chi4")
        assert code == EXIT_OK
        power_line = next(l for l in out.splitlines() if l.strip().startswith("power"))
        assert "<- recommended" in power_line

    def test_fit_from_csv_file_matches_in_memory(self, capsys, tmp_path):
        path = tmp_path / "s.csv"
        run(capsys, "sweep", "--out", str(path))
        from_file = run(capsys, "fit", str(path), "--format", "csv")[1]
        in_memory = run(capsys, "fit", "--format", "csv")[1]
        assert from_file == in_memory

    def test_fit_from_stdin(self, capsys, monkeypatch):
        import io
        csv_text = run(capsys, "sweep")[1]
        monkeypatch.setattr("sys.stdin", io.StringIO(csv_text))
        code, out, _ = run(capsys, "fit", "-", "--metric", "w_net", "--model", "log")
        assert code == EXIT_OK and "log" in out and "power" not in out

    def test_single_row_is_degenerate(self, capsys, tmp_path):
        path = tmp_path / "one.csv"
        run(capsys, "sweep", "--pressures", "12.5", "--out", str(path))
        code, out, err = run(capsys, "fit", str(path), "--metric", "w_net")
        assert code == EXIT_NUMERIC
        assert out == "" and "distinct x" in err

    def test_malformed_csv_reports_line(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        good = run(capsys, "sweep", "--pressures", "10,20")[1].splitlines()
        path.write_text("\n".join([good[0], good[1], "1,2,oops,4,5,6,7,false"]) + "\n")
        code, out, err = run(capsys, "fit", str(path))
        assert code == EXIT_IO
        assert out == "" and "line 3" in err

    def test_missing_csv_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "fit", str(tmp_path / "nope.csv"))
        assert code == EXIT_IO and "cannot read" in err

    def test_wrong_header(self):
        with pytest.raises(ParseError, match="line 1"):
            read_sweep_csv("a,b\n1,2\n")


class TestValidate:
    def test_default_passes(self, capsys):
        code, out, _ = run(capsys, "validate")
        assert code == EXIT_OK
        checks = [l for l in out.splitlines() if l.startswith("[")]
        assert len(checks) >= 10
        assert all(l.startswith("[PASS]") for l in checks)

    def test_json_report(self, capsys):
        code, out, _ = run(capsys, "validate", "--format", "json")
        doc = json.loads(out)
        assert code == EXIT_OK and doc["passed"] is True
        assert all({"name", "expected", "computed", "tolerance", "passed"} <= set(c)
                   for c in doc["checks"])

    def test_enthalpy_offset_fault_injection(self, capsys, monkeypatch):
        # Shift the enthalpy reference by +100 kJ/kg in both phases.
        r1, r2 = sp._region1, sp._region2

        def shifted(fn):
            def inner(p, T):
                h, s, v = fn(p, T)
                return h + 1e5, s, v
            return inner

        monkeypatch.setattr(sp, "_region1", shifted(r1))
        monkeypatch.setattr(sp, "_region2", shifted(r2))
        code, out, _ = run(capsys, "validate")
        assert code == EXIT_SPEC
        status = {m.group(2).strip(): m.group(1)
                  for m in re.finditer(r"^\[(PASS|FAIL)\] (.*?)\s+expected=", out, re.M)}
        for name in ("h1", "h2", "h3", "h4"):
            assert status[name] == "FAIL", name
        for name in ("base eta_cyc", "base w_net", "base q_b", "base w_p", "x4", "s3"):
            assert status[name] == "PASS", name
        assert "checks passed -> FAIL" in out
