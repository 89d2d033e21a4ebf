"""End-to-end tests of the command-line interface and its file formats."""

import json
import re
import subprocess
import sys

import numpy as np
import pytest

from sumdiff.channels import Ad2Params, ad2_coefficients
from sumdiff.choi import ad2_signed_kraus
from sumdiff.cli import _kraus_from_json, main
from sumdiff.linalg import max_abs

GAD_ARGS = ["--channel", "gad", "--p", "0.5", "--lam", "0.36"]
AD2_ARGS = ["--channel", "ad2", "--gamma", "1", "--gamma12", "0.3",
            "--omega12", "2", "--omega0", "10", "--t", "0.7"]


def run_extract(tmp_path, name, extra=(), args=GAD_ARGS):
    out = tmp_path / name
    code = main(["extract", *args, "--out", str(out), *extra])
    return code, out


def strip_timestamp(text):
    return re.sub(r'"timestamp": "[^"]*"', '"timestamp": ""', text)


def test_extract_gad_balanced_point(tmp_path):
    code, out = run_extract(tmp_path, "gad.json")
    assert code == 0
    data = json.loads(out.read_text())
    assert data["format"] == "sumdiff-kraus/1"
    assert 4 <= data["operator_count"] <= 6
    assert data["residuals"]["completeness"] < 1e-10
    assert data["residuals"]["reconstruction"] < 1e-10
    assert data["metadata"]["channel"] == "gad"
    assert data["metadata"]["params"] == {"p": 0.5, "lam": 0.36}
    assert data["report"]["is_cp"] is True
    assert data["report"]["is_trace_preserving"] is True
    count = len(data["operators"]["positive"]) + len(data["operators"]["negative"])
    assert count == data["operator_count"]


def test_extract_gad_unbalanced_point_fails_verification(tmp_path):
    # off p = 1/2 the operator family is not trace preserving; extraction
    # still writes the export but reports the residual and exits nonzero
    code, out = run_extract(tmp_path, "gad_unbal.json",
                            args=["--channel", "gad", "--p", "0.35", "--lam", "0.36"])
    assert code == 2
    data = json.loads(out.read_text())
    assert abs(data["residuals"]["completeness"] - 0.36 * 0.3) < 1e-12
    assert data["residuals"]["reconstruction"] < 1e-10
    assert data["report"]["is_trace_preserving"] is False


def test_extract_ad2_default_partition(tmp_path):
    code, out = run_extract(tmp_path, "ad2.json", args=AD2_ARGS)
    assert code == 0
    data = json.loads(out.read_text())
    assert data["operator_count"] == 25
    pos_labels = [entry["label"] for entry in data["operators"]["positive"]]
    assert pos_labels[:9] == ["H", "G", "F", "E", "D", "C", "A", "1", "B"]
    assert data["residuals"]["completeness"] < 1e-10
    assert data["dim"] == 4


def test_extract_ad2_split_partition(tmp_path):
    code, out = run_extract(tmp_path, "ad2_split.json", args=AD2_ARGS,
                            extra=["--partition", "split-real-imag"])
    assert code == 0
    data = json.loads(out.read_text())
    assert len(data["operators"]["positive"]) == 19  # 9 diagonal + 10 pair halves
    assert len(data["operators"]["negative"]) == 10
    assert data["residuals"]["reconstruction"] < 1e-10


def test_extract_ad2_identity_time_full_spectral(tmp_path):
    args = ["--channel", "ad2", "--gamma", "1", "--gamma12", "0.3",
            "--omega12", "2", "--omega0", "10", "--t", "0"]
    code, out = run_extract(tmp_path, "ad2_t0.json", args=args,
                            extra=["--partition", "full-spectral"])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["operator_count"] == 1
    op = _kraus_from_json(data["operators"]).positive[0]
    assert max_abs(op - np.eye(4)) < 1e-12


def test_extract_deterministic_output(tmp_path):
    _, a = run_extract(tmp_path, "a.json", args=AD2_ARGS)
    _, b = run_extract(tmp_path, "b.json", args=AD2_ARGS)
    assert strip_timestamp(a.read_text()) == strip_timestamp(b.read_text())


def test_extract_writes_stdout_by_default(capsys):
    code = main(["extract", *GAD_ARGS])
    assert code == 0
    captured = capsys.readouterr()
    data = json.loads(captured.out)
    assert data["format"] == "sumdiff-kraus/1"


def test_export_round_trips_exactly(tmp_path):
    _, out = run_extract(tmp_path, "ad2_rt.json", args=AD2_ARGS)
    data = json.loads(out.read_text())
    ks = _kraus_from_json(data["operators"])
    co = ad2_coefficients(Ad2Params(gamma=1.0, gamma12=0.3, omega12=2.0, omega0=10.0, t=0.7))
    ref = ad2_signed_kraus(co)
    assert ks.positive_labels == ref.positive_labels
    assert ks.negative_labels == ref.negative_labels
    for got, want in zip(ks.positive + ks.negative, ref.positive + ref.negative):
        assert max_abs(got - want) == 0.0  # lossless float round trip


def test_verify_fresh_export_passes(tmp_path, capsys):
    _, out = run_extract(tmp_path, "gad_v.json")
    code = main(["verify", str(out)])
    assert code == 0
    text = capsys.readouterr().out
    assert "PASS" in text
    assert "completeness" in text


def test_verify_against_standard_kraus(tmp_path):
    _, out = run_extract(tmp_path, "gad_std.json")
    assert main(["verify", str(out), "--against", "standard-kraus"]) == 0


def test_verify_ad2_direct_action(tmp_path):
    _, out = run_extract(tmp_path, "ad2_v.json", args=AD2_ARGS)
    assert main(["verify", str(out), "--count", "25"]) == 0


def test_verify_detects_corruption(tmp_path, capsys):
    _, out = run_extract(tmp_path, "gad_c.json")
    data = json.loads(out.read_text())
    data["operators"]["positive"][0]["matrix"][0][0][0] += 1e-3
    out.write_text(json.dumps(data))
    code = main(["verify", str(out)])
    assert code == 2
    text = capsys.readouterr().out
    assert "FAIL" in text
    # reported deviation reflects the size of the injected fault
    devs = [float(x) for x in re.findall(r"(\d\.\d+e[+-]\d+)", text)]
    assert any(1e-4 < d < 1e-2 for d in devs)


def test_verify_missing_file_is_io_error(tmp_path):
    assert main(["verify", str(tmp_path / "nope.json")]) == 3


def test_verify_malformed_json_is_io_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["verify", str(bad)]) == 3


def test_verify_wrong_format_marker_is_io_error(tmp_path):
    bad = tmp_path / "other.json"
    bad.write_text(json.dumps({"format": "something-else/9"}))
    assert main(["verify", str(bad)]) == 3


def test_verify_missing_fields_is_io_error(tmp_path):
    bad = tmp_path / "fields.json"
    bad.write_text(json.dumps({"format": "sumdiff-kraus/1", "metadata": {}}))
    assert main(["verify", str(bad)]) == 3


def test_usage_errors_exit_one(tmp_path):
    assert main(["extract", "--channel", "nope"]) == 1
    assert main(["extract", "--channel", "gad", "--p", "0.5"]) == 1  # lam missing
    assert main(["extract", *GAD_ARGS, "--no-such-flag"]) == 1
    assert main(["sweep", *GAD_ARGS, "--t-min", "0", "--t-max", "1", "--steps", "5"]) == 1
    assert main(["sweep", "--channel", "ad2", "--gamma", "1", "--gamma12", "0",
                 "--omega12", "1", "--omega0", "1",
                 "--t-min", "0", "--t-max", "1", "--steps", "1"]) == 1
    assert main(["sweep", "--channel", "ad2", "--gamma", "1", "--gamma12", "0",
                 "--omega12", "1", "--omega0", "1",
                 "--t-min", "2", "--t-max", "1", "--steps", "5"]) == 1


def test_invalid_parameters_exit_one():
    # library-level range rejection surfaces as a usage failure
    assert main(["extract", "--channel", "gad", "--p", "1.5", "--lam", "0.2"]) == 1
    assert main(["extract", "--channel", "ad2", "--gamma", "-1", "--gamma12", "0",
                 "--omega12", "1", "--omega0", "1", "--t", "0.5"]) == 1


def test_tolerance_precedence(tmp_path, monkeypatch):
    # environment tightens the default; the flag wins over the environment
    monkeypatch.setenv("SUMDIFF_TOLERANCE", "1e-30")
    code, _ = run_extract(tmp_path, "t_env.json")
    assert code == 2
    code, _ = run_extract(tmp_path, "t_flag.json", extra=["--tolerance", "1e-10"])
    assert code == 0
    monkeypatch.delenv("SUMDIFF_TOLERANCE")
    config = tmp_path / "conf.json"
    config.write_text(json.dumps({"tolerance": 1e-30}))
    code, _ = run_extract(tmp_path, "t_conf.json", extra=["--config", str(config)])
    assert code == 2
    code, _ = run_extract(tmp_path, "t_conf_flag.json",
                          extra=["--config", str(config), "--tolerance", "1e-10"])
    assert code == 0


def test_bad_tolerance_values(monkeypatch):
    monkeypatch.setenv("SUMDIFF_TOLERANCE", "abc")
    assert main(["extract", *GAD_ARGS]) == 1
    monkeypatch.setenv("SUMDIFF_TOLERANCE", "-1e-10")
    assert main(["extract", *GAD_ARGS]) == 1


def test_config_supplies_parameters(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"p": 0.5, "lam": 0.36, "partition": "diag-pairs"}))
    out = tmp_path / "from_conf.json"
    code = main(["extract", "--channel", "gad", "--config", str(config), "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["metadata"]["params"] == {"p": 0.5, "lam": 0.36}


def test_config_rejects_unknown_partition(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"p": 0.5, "lam": 0.36, "partition": "bogus"}))
    assert main(["extract", "--channel", "gad", "--config", str(config)]) == 1


def test_flag_overrides_config(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"p": 0.1, "lam": 0.9}))
    out = tmp_path / "override.json"
    code = main(["extract", "--channel", "gad", "--config", str(config),
                 "--p", "0.5", "--lam", "0.36", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["metadata"]["params"] == {"p": 0.5, "lam": 0.36}


def test_seed_only_changes_metadata(tmp_path):
    _, a = run_extract(tmp_path, "s0.json", args=AD2_ARGS, extra=["--seed", "0"])
    _, b = run_extract(tmp_path, "s7.json", args=AD2_ARGS, extra=["--seed", "7"])
    ja, jb = json.loads(a.read_text()), json.loads(b.read_text())
    assert ja["metadata"]["seed"] == 0
    assert jb["metadata"]["seed"] == 7
    ja["metadata"]["seed"] = jb["metadata"]["seed"] = 0
    ja["metadata"]["timestamp"] = jb["metadata"]["timestamp"] = ""
    assert ja == jb


def test_sweep_csv_structure_and_decay(tmp_path):
    out = tmp_path / "sweep.csv"
    code = main(["sweep", "--channel", "ad2", "--gamma", "1", "--gamma12", "0.3",
                 "--omega12", "2", "--omega0", "10",
                 "--t-min", "0", "--t-max", "50", "--steps", "101",
                 "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    header = lines[0].split(",")
    assert header[0] == "t"
    assert "abs_F" in header and "pdc_concurrence" in header
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 101
    ts = [float(r[0]) for r in rows]
    assert ts == sorted(ts)
    for name in ("abs_F", "abs_G", "abs_H"):
        col = [float(r[header.index(name)]) for r in rows]
        assert all(b >= a - 1e-12 for a, b in zip(col, col[1:]))  # monotone fill
        assert abs(col[-1] - 1.0) < 1e-8
    conc = [float(r[header.index("pdc_concurrence")]) for r in rows]
    assert abs(conc[0] - 1.0) < 1e-12
    assert conc[-1] < 1e-8
    for r in rows:
        assert float(r[header.index("completeness")]) < 1e-10
        assert float(r[header.index("reconstruction")]) < 1e-10
        assert float(r[header.index("min_choi_eigenvalue")]) > -1e-10
    # the diagonal sub-channel Choi stays separable; the dephasing one starts
    # entangled and only asymptotically crosses over
    ppt_mdc = {r[header.index("mdc_choi_ppt")] for r in rows}
    assert ppt_mdc == {"True"}
    ppt_pdc = [r[header.index("pdc_choi_ppt")] for r in rows]
    assert ppt_pdc[1] == "False"


def test_console_entry_point(tmp_path):
    out = tmp_path / "cli.json"
    proc = subprocess.run(
        [sys.executable, "-m", "sumdiff.cli", "extract", *GAD_ARGS, "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "ok" in proc.stderr
    assert json.loads(out.read_text())["format"] == "sumdiff-kraus/1"
