import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from ftqc_estimate import (HardwareProfile, InputError, LogicalRequirements, PRESETS, Strategy,
                           estimate, load_scenario, log_grid, sweep_physical_error)
from ftqc_estimate.cli import main
from ftqc_estimate.io import (CSV_COLUMNS, estimate_from_json, estimate_to_json, flatten,
                              format_table, parse_duration, scenario_to_dict, sweep_to_dict,
                              write_sweep_csv)

GOLDEN = Path(__file__).parent / "golden"
UNIT_SUFFIXES = ("_s", "_qubits", "_cycles", "_count", "_prob", "_distance", "_tiles", "_m",
                 "_m2", "_ratio", "_beats")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def numeric_keys(obj):
    for key, value in flatten(obj):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            yield key


class TestPresets:
    def test_femoco(self):
        sc = load_scenario("femoco")
        assert sc.logical.logical_qubits == 2196
        assert sc.logical.toffoli_count == 6_700_000_000
        assert not sc.logical.has_depth
        assert "Lee" in sc.notes

    def test_bitcoin(self):
        lg = load_scenario("bitcoin-ec256").logical
        assert (lg.logical_qubits, lg.t_count, lg.measurement_depth) == (
            2871, 5_760_000_000, 18_800_000)
        assert "Haner" in PRESETS["bitcoin-ec256"].notes

    def test_unknown(self):
        with pytest.raises(InputError, match="femoco"):
            load_scenario("no-such-preset")


class TestScenarioFiles:
    def test_round_trip(self, tmp_path):
        sc = load_scenario("femoco")
        doc = scenario_to_dict(sc)
        doc["logical"]["depth_fraction"] = "1/100"
        path = tmp_path / "s.json"
        path.write_text(json.dumps(doc))
        loaded = load_scenario(path)
        assert loaded.logical.depth_fraction == Fraction(1, 100)
        assert loaded.logical.depth == 67_000_000
        assert loaded.budget == sc.budget

    def test_malformed_reports_position(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"version": 1,\n  "logical": {"logical_qubits": 5,,}\n}')
        with pytest.raises(InputError, match=r"bad\.json:2:\d+"):
            load_scenario(path)

    def test_unknown_field_path(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"version": 1, "logical": {"logical_qubits": 5, "t_count": 9,
                                                              "qbits": 3}}))
        with pytest.raises(InputError, match=r"logical\.qbits: unknown field"):
            load_scenario(path)

    def test_version_required(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"logical": {"logical_qubits": 5, "t_count": 9}}))
        with pytest.raises(InputError, match="version"):
            load_scenario(path)

    def test_invalid_values(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"version": 1, "logical": {"logical_qubits": 5,
                                                              "t_count": 2.5}}))
        with pytest.raises(InputError, match="t_count"):
            load_scenario(path)


@pytest.mark.parametrize("text, seconds", [
    ("1e-6", 1e-6), ("235us", 235e-6), ("235 µs", 235e-6), ("5ms", 5e-3), ("3600", 3600.0),
    ("10 min", 600.0), ("1h", 3600.0), ("2day", 172800.0), ("10days", 864000.0), (7, 7.0)])
def test_parse_duration(text, seconds):
    assert parse_duration(text) == pytest.approx(seconds)


@pytest.mark.parametrize("text", ["abc", "5 fortnights", "1..2s"])
def test_parse_duration_rejects(text):
    with pytest.raises(InputError):
        parse_duration(text)


class TestSerialization:
    @pytest.mark.parametrize("strategy, count", [(Strategy.AUTOCCZ, 3), (Strategy.GOSC, 4),
                                                 (Strategy.BEAT_LIMITED, None)])
    def test_byte_identical_round_trip(self, bitcoin, sc_profile, strategy, count):
        text = estimate_to_json(estimate(bitcoin, sc_profile, strategy, count))
        assert estimate_to_json(estimate_from_json(text)) == text

    def test_unit_suffixes(self, bitcoin, sc_profile):
        for strategy in Strategy:
            doc = json.loads(estimate_to_json(estimate(bitcoin, sc_profile, strategy)))
            for key in numeric_keys(doc):
                assert key.endswith(UNIT_SUFFIXES), key

    def test_sweep_outputs(self, bitcoin, sc_profile):
        series = sweep_physical_error(bitcoin, sc_profile, log_grid(1e-3, 5e-3, 4), 3600)
        doc = sweep_to_dict(series)
        for key in numeric_keys(doc):
            assert key.endswith(UNIT_SUFFIXES), key
        buf = io.StringIO()
        write_sweep_csv(series, buf)
        rows = list(csv.reader(io.StringIO(buf.getvalue())))
        assert rows[0] == CSV_COLUMNS
        assert len(rows) == len(series.samples) + 1
        assert float(rows[1][0]) == series.samples[0][0]
        assert int(rows[1][1]) == series.samples[0][1].total_physical_qubits

    def test_table_mirrors_json(self, bitcoin, sc_profile):
        doc = json.loads(estimate_to_json(estimate(bitcoin, sc_profile, Strategy.AUTOCCZ)))
        lines = format_table(doc).splitlines()
        assert len(lines) == len(flatten(doc))
        for line, (key, value) in zip(lines, flatten(doc)):
            k, v = line.split(None, 1)
            assert k == key and json.loads(v) == value


class TestCli:
    def test_golden_estimate(self, capsys):
        code, out, _ = run_cli(capsys, "estimate", "--scenario", "bitcoin-ec256", "--cc", "1e-6",
                               "--p", "1e-3", "--strategy", "autoccz", "--factories", "1")
        assert code == 0
        assert out == (GOLDEN / "estimate_bitcoin_autoccz_1.json").read_text()

    def test_min_qubits(self, capsys):
        code, out, _ = run_cli(capsys, "min-qubits", "--scenario", "bitcoin-ec256", "--cc", "1e-6",
                               "--p", "1e-3", "--target", "3600")
        assert code == 0
        assert json.loads(out)["total_physical_qubits"] == pytest.approx(35e6, rel=0.4)

    def test_area(self, capsys):
        code, out, _ = run_cli(capsys, "area", "--qubits", "40e6", "--density", "5.36e-6")
        assert code == 0
        assert json.loads(out)["side_length_m"] == pytest.approx(14.6, rel=0.01)

    def test_max_speed(self, capsys):
        code, out, _ = run_cli(capsys, "max-speed", "--scenario", "femoco", "--depth-fraction",
                               "1/100", "--cc", "235us", "--qubits", "45e6")
        assert code == 0
        assert json.loads(out)["runtime_s"] / 86400 == pytest.approx(10, rel=0.4)

    def test_calibrate_factory(self, capsys):
        code, out, _ = run_cli(capsys, "calibrate-factory", "--states", "2.88e9")
        assert code == 0
        assert json.loads(out)["factory"]["output_error_prob"] <= 0.05 / 2.88e9
        code, _, err = run_cli(capsys, "calibrate-factory", "--kind", "t", "--states", "5e7")
        assert code == 3 and "CalibrationInfeasible" in err
        code, _, _ = run_cli(capsys, "calibrate-factory", "--kind", "t", "--levels", "2",
                             "--states", "5e7")
        assert code == 0

    def test_optimize_depth(self, capsys):
        code, out, _ = run_cli(capsys, "optimize-depth", "--n", "500", "--t-count", "1e11",
                               "--target", "1day")
        doc = json.loads(out)
        assert code == 0 and doc["phase"] == "equilibrium" and doc["t_layer_count"] > 1

    def test_sweep_csv(self, capsys, tmp_path):
        out_path = tmp_path / "s.csv"
        code, out, _ = run_cli(capsys, "sweep-error", "--scenario", "bitcoin-ec256", "--target",
                               "1h", "--p-min", "1e-3", "--p-max", "4e-3", "--per-decade", "5",
                               "--out", str(out_path))
        assert code == 0
        doc = json.loads(out)
        assert doc["termination"] == "calibration_infeasible"
        assert out_path.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)

    def test_sweep_cc_table(self, capsys):
        code, out, _ = run_cli(capsys, "sweep-cc", "--scenario", "bitcoin-ec256", "--target",
                               "1day", "--cc-min", "1e-7", "--cc-max", "1e-6", "--per-decade",
                               "2", "--format", "table")
        assert code == 0 and out.startswith("axis_name")

    def test_infeasible_exit_3(self, capsys):
        code, _, err = run_cli(capsys, "min-qubits", "--scenario", "bitcoin-ec256", "--cc", "1s",
                               "--target", "10min")
        assert code == 3 and "TargetUnreachable" in err

    @pytest.mark.parametrize("argv", [
        ["estimate", "--scenario", "no-such"],
        ["estimate", "--scenario", "femoco", "--p", "0.02"],
        ["estimate", "--scenario", "femoco", "--cc", "fast"],
        ["min-qubits", "--scenario", "femoco", "--target", "-5"],
    ])
    def test_input_error_exit_2(self, capsys, argv):
        code, _, err = run_cli(capsys, *argv)
        assert code == 2 and err.startswith("error:")

    def test_argparse_usage_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["estimate"])
        assert exc.value.code == 2

    def test_model_config_env(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "model.json"
        path.write_text(json.dumps({"version": 1, "factory_model": {"footprint_multiplier": 2}}))
        monkeypatch.setenv("FTQC_MODEL_CONFIG", str(path))
        _, out, _ = run_cli(capsys, "calibrate-factory", "--states", "2.88e9")
        monkeypatch.delenv("FTQC_MODEL_CONFIG")
        _, base, _ = run_cli(capsys, "calibrate-factory", "--states", "2.88e9")
        assert (json.loads(out)["factory"]["footprint_physical_qubits"]
                == 2 * json.loads(base)["factory"]["footprint_physical_qubits"])

    def test_module_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "ftqc_estimate", "area", "--qubits", "1e6",
                               "--density", "1e-6"], capture_output=True, text=True)
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["side_length_m"] == pytest.approx(1.0)
