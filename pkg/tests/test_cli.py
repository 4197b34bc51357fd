import json
import subprocess
import sys

import pytest

from mhopf.cli import main
from mhopf.serialize import element_to_json, instance_to_json


def run_cli(*argv):
    from io import StringIO

    out = StringIO()
    old = sys.stdout
    sys.stdout = out
    try:
        code = main(list(argv))
    finally:
        sys.stdout = old
    return code, out.getvalue()


def test_axioms_suite_passes():
    code, out = run_cli("run", "axioms", "--group", "Z2", "--json")
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert lines and all(l["status"] in ("pass", "sampled-pass", "skipped") for l in lines)


def test_all_suite_exit_zero():
    code, out = run_cli("run", "all", "--group", "Z2")
    assert code == 0
    assert "checks passed" in out


def test_sampled_statuses_for_integers():
    code, out = run_cli("run", "axioms", "--group", "Z", "--sample-range", "3", "--json")
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    axioms = [l for l in lines if "t1-bijective" in l["check"]]
    assert axioms and all(l["status"] == "sampled-pass" for l in axioms)


def test_reports_byte_stable():
    _, out1 = run_cli("run", "smash", "--group", "Z2", "--json", "--seed", "5")
    _, out2 = run_cli("run", "smash", "--group", "Z2", "--json", "--seed", "5")
    assert out1 == out2


def test_corrupted_instance_fails_with_witness(tmp_path, cz2):
    blob = instance_to_json(cz2)
    blob["antipode"] = [
        [k, {"domain": blob["domain"], "terms": []}] for k, _ in blob["antipode"]
    ]
    path = tmp_path / "corrupted.json"
    path.write_text(json.dumps(blob))
    code, out = run_cli("run", "axioms", "--instance", str(path), "--json")
    assert code == 1
    lines = [json.loads(l) for l in out.strip().splitlines()]
    failures = [l for l in lines if l["status"] == "fail"]
    assert failures and any("witness" in l for l in failures)


def test_malformed_instance_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _ = run_cli("run", "axioms", "--instance", str(path))
    assert code == 2


def test_unknown_instance_id():
    code, _ = run_cli("run", "axioms", "--instance", "Q(8)")
    assert code == 2


def test_smash_command(tmp_path):
    path = tmp_path / "action.json"
    path.write_text(json.dumps({"algebra_id": "C[Z2]", "rule": "translation"}))
    code, out = run_cli("smash", "--action", str(path), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 4
    assert payload["structure_constants"] != "omitted (large)"
    assert all(c["status"] in ("pass", "skipped") for c in payload["certificates"])


def test_pair_command():
    code, out = run_cli("pair", "--group", "Z3", "--verify", "--json")
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert any("heisenberg" in l["check"] for l in lines)


def test_duality_command():
    code, out = run_cli("duality", "--R", "trivial", "--A", "C[Z2]", "--json")
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    by_check = {l["check"]: l["status"] for l in lines}
    assert by_check["dimension"] == "pass"
    assert by_check["multiplicative"] == "pass"


def test_duality_command_with_action_file(tmp_path):
    path = tmp_path / "action.json"
    path.write_text(json.dumps({"algebra_id": "C[Z2]", "rule": "translation"}))
    code, out = run_cli("duality", "--R", str(path), "--A", "C[Z2]", "--json")
    assert code == 0
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert {l["check"]: l["status"] for l in lines}["matrix-form-multiplicative"] == "pass"


def test_parallel_jobs_preserve_order_and_results():
    _, seq = run_cli("run", "axioms", "--group", "Z2", "--json")
    _, par = run_cli("run", "axioms", "--group", "Z2", "--json", "--jobs", "4")
    assert seq == par


def test_timing_flag_adds_elapsed_field():
    _, out = run_cli("run", "sweedler", "--group", "Z2", "--json", "--timing")
    lines = [json.loads(l) for l in out.strip().splitlines()]
    assert all("elapsed_s" in l for l in lines)
    _, out2 = run_cli("run", "sweedler", "--group", "Z2", "--json")
    lines2 = [json.loads(l) for l in out2.strip().splitlines()]
    assert all("elapsed_s" not in l for l in lines2)


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "mhopf.cli", "run", "sweedler", "--group", "Z2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
