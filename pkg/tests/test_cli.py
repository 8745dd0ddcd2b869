import json
import os

import pytest

from orlicz_korn.cli import main


def run(tmp_path, *args):
    out = tmp_path / "out"
    rc = main(list(args) + ["--out", str(out)])
    return rc, out


def test_unknown_subcommand_exits_2():
    assert main(["no-such-command"]) == 2


def test_malformed_flag_exits_2():
    assert main(["check-balance", "--nope"]) == 2


def test_unknown_young_name_exits_2(tmp_path):
    rc, _ = run(tmp_path, "check-balance", "--A", "missing", "--B", "L2")
    assert rc == 2


def test_check_balance_writes_csv_and_manifest(tmp_path):
    rc, out = run(tmp_path, "check-balance", "--A", "L2", "--B", "L2")
    assert rc == 0
    lines = (out / "balance.csv").read_text().strip().splitlines()
    assert lines[0] == "name_A,name_B,primal_holds,dual_holds,c,t0"
    assert lines[1].startswith("L2,L2,True,True,")
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["command"] == "check-balance"
    assert manifest["catalog_version"]
    assert manifest["tool_version"]


def test_laminate_demo_m0(tmp_path):
    rc, out = run(tmp_path, "laminate-demo", "--m-max", "0",
                  "--A", "L1", "--B", "L1")
    assert rc == 0
    lines = (out / "blowup.csv").read_text().strip().splitlines()
    assert len(lines) == 2
    ratio = float(lines[1].split(",")[-1])
    assert ratio == 0.0


def test_verify_korn_runs(tmp_path):
    rc, out = run(tmp_path, "verify-korn", "--A", "L2", "--B", "L2",
                  "--grid", "8", "--suite", "smooth", "--trials", "2")
    assert rc == 0
    assert (out / "korn_ratios.csv").exists()


def test_poincare_runs(tmp_path):
    rc, out = run(tmp_path, "poincare", "--A", "Linf", "--grid", "8",
                  "--trials", "2")
    assert rc == 0
    body = (out / "poincare.csv").read_text()
    assert "ratio" in body


def test_negative_norm_runs(tmp_path):
    rc, out = run(tmp_path, "negative-norm", "--A", "L2", "--grid", "8",
                  "--trials", "1")
    assert rc == 0
    assert "trivial_upper" in (out / "negative_norm.csv").read_text()


def test_deterministic_output_bytes(tmp_path):
    rc1, out1 = run(tmp_path / "a", "verify-hardy", "--A", "L2", "--B", "L2",
                    "--trials", "8")
    rc2, out2 = run(tmp_path / "b", "verify-hardy", "--A", "L2", "--B", "L2",
                    "--trials", "8")
    assert rc1 == rc2 == 0
    assert (out1 / "hardy_trials.csv").read_bytes() == \
        (out2 / "hardy_trials.csv").read_bytes()
    assert (out1 / "hardy_sweep.csv").read_bytes() == \
        (out2 / "hardy_sweep.csv").read_bytes()


def test_config_file_replaces_flags(tmp_path):
    cfgfile = tmp_path / "cfg.json"
    cfgfile.write_text(json.dumps({"A": "L2", "B": "L2", "trials": 4}))
    out = tmp_path / "out"
    rc = main(["--config", str(cfgfile), "verify-hardy", "--out", str(out)])
    assert rc == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["parameters"]["trials"] == 4
