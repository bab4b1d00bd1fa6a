import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cuspcount import store
from cuspcount.cli import main


@pytest.fixture(autouse=True)
def _no_env_cache(monkeypatch):
    monkeypatch.delenv(store.ENV_VAR, raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_cubic(capsys):
    code, out, _ = run(capsys, "compute", "--degree", "3", "--lines", "10", "--points", "0")
    assert code == 0
    assert out.strip() == "C_3(10,0) = 17760"


def test_compute_conic(capsys):
    code, out, _ = run(capsys, "compute", "--degree", "2", "--lines", "7", "--points", "0")
    assert code == 0 and out.strip().endswith("= 0")


def test_dimension_gate_exit_code(capsys):
    code, _, err = run(capsys, "compute", "--degree", "3", "--lines", "9", "--points", "0")
    assert code == 2
    assert "dimension-mismatch" in err


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "compute", "-d", "4", "-r", "13", "-s", "0", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert set(payload) == {"d", "r", "s", "euler", "boundary", "count"}
    assert all(isinstance(v, str) for v in payload.values())
    assert Fraction(payload["euler"]) - Fraction(payload["boundary"]) == int(payload["count"]) == 10613184


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--degree", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert [(row["r"], row["s"]) for row in rows] == [("10", "0"), ("8", "1"), ("6", "2"), ("4", "3"),
                                                      ("2", "4"), ("0", "5")]
    assert [row["count"] for row in rows[:4]] == ["17760", "2064", "240", "24"]


def test_table_conics_all_zero(capsys):
    code, out, _ = run(capsys, "table", "--degree", "2", "--format", "json")
    assert code == 0
    assert {row["count"] for row in json.loads(out)} == {"0"}


def test_table_degree_one(capsys):
    code, _, _ = run(capsys, "table", "--degree", "1")
    assert code == 2
    code, out, _ = run(capsys, "table", "--degree", "1", "--allow-d1")
    assert code == 0 and out.count("= 0") == 3


def test_jobs_determinism(capsys):
    _, serial, _ = run(capsys, "table", "--degree", "4", "--format", "json", "--jobs", "1")
    _, parallel, _ = run(capsys, "table", "--degree", "4", "--format", "json", "--jobs", "4")
    assert serial == parallel


def test_base_and_phi(capsys):
    code, out, _ = run(capsys, "base", "-d", "1", "-r", "4", "-s", "0", "-t", "1")
    assert code == 0 and out.strip().endswith("= 2")
    code, out, _ = run(capsys, "phi", "-d", "1", "-i", "1", "-j", "0", "-r", "4", "-s", "0", "-t", "1",
                       "--format", "json")
    assert code == 0 and json.loads(out)["value"] == "-4"
    code, _, err = run(capsys, "phi", "-d", "3", "-i", "2", "-j", "1", "-r", "7", "-s", "0")
    assert code == 2 and "unsupported-level" in err


def test_cache_written_and_reused(capsys, tmp_path):
    cache = tmp_path / "memo.txt"
    _, cold, _ = run(capsys, "table", "-d", "3", "--format", "json", "--cache", str(cache))
    first = cache.read_bytes()
    assert first.startswith(b"cuspcount-cache v1 ring=")
    _, warm, _ = run(capsys, "table", "-d", "3", "--format", "json", "--cache", str(cache))
    assert warm == cold
    assert cache.read_bytes() == first


def test_cache_from_environment(capsys, tmp_path, monkeypatch):
    cache = tmp_path / "env.txt"
    monkeypatch.setenv(store.ENV_VAR, str(cache))
    run(capsys, "compute", "-d", "2", "-r", "7", "-s", "0")
    assert cache.exists()


def test_corrupted_cache(capsys, tmp_path):
    cache = tmp_path / "memo.txt"
    cache.write_text("cuspcount-cache v1 ring=deadbeefdeadbeef\nN 1 4 0 1 2\n")
    code, _, err = run(capsys, "verify", "--max-degree", "2", "--cache", str(cache))
    assert code == 3
    assert "ring" in err


def test_tampered_cache_value_detected(capsys, tmp_path):
    cache = tmp_path / "memo.txt"
    cache.write_text(store.header() + "\nN 1 4 0 1 3\n")
    code, _, _ = run(capsys, "base", "-d", "1", "-r", "4", "-s", "0", "-t", "1", "--cache", str(cache))
    assert code == 3


@pytest.mark.parametrize("max_degree", [2, 4])
def test_verify_passes(capsys, max_degree):
    code, out, _ = run(capsys, "verify", "--max-degree", str(max_degree))
    assert code == 0
    assert "FAIL" not in out
    assert "s)" in out


def test_verify_rejects_degree_one(capsys):
    code, _, _ = run(capsys, "verify", "--max-degree", "1")
    assert code == 2


def test_verify_reports_diff(capsys, monkeypatch):
    from cuspcount import verify

    monkeypatch.setitem(verify.KNOWN_COUNTS, (3, 10, 0), 17761)
    code, out, _ = run(capsys, "verify", "--max-degree", "3")
    assert code == 1
    assert "expected 17761, computed 17760" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cuspcount", "compute", "-d", "3", "-r", "4", "-s", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "C_3(4,3) = 24"
