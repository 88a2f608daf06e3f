"""Command line driver: exit codes, formats, determinism."""

import csv
import io
import json

import pytest

from pmdg.cli import run


def run_cli(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_counts_passes(capsys):
    code, out, err = run_cli(capsys, "counts", "--k", "3")
    assert code == 0
    assert "0 fail" in out
    assert err == ""


def test_ekr_passes(capsys):
    code, out, _ = run_cli(capsys, "ekr", "--k", "3")
    assert code == 0
    assert "coclique-number" in out


def test_spectra_k2_passes(capsys):
    code, out, _ = run_cli(capsys, "spectra", "--k", "2")
    assert code == 0
    assert "{2^1, -1^2}" in out


def test_spectra_k3_reports_the_bound_equality(capsys):
    # one genuine failure: the non-exempt eigenvalue 2 meets d/(2k-2)
    # exactly at k=3, so the strict inequality record honestly fails
    code, out, _ = run_cli(capsys, "spectra", "--k", "3")
    assert code == 1
    assert "strict-bound-nonexempt-labels" in out
    assert out.count(" fail") >= 1
    assert "1 fail" in out


def test_reps_reports_the_n10_exception(capsys):
    # two 42-dimensional shapes sit under the 45 bound at n=10, so the
    # eight-shape count record honestly fails there and only there
    code, out, _ = run_cli(capsys, "reps")
    assert code == 1
    lines = [ln for ln in out.splitlines() if ln.endswith("fail")]
    assert len(lines) == 1
    assert "small-degree-count" in lines[0]
    assert "n=10" in lines[0]


def test_graph_passes(capsys):
    code, out, _ = run_cli(capsys, "graph", "--k", "3")
    assert code == 0
    assert "one-factorization-rounds" in out


def test_polytope_passes(capsys):
    code, out, _ = run_cli(capsys, "polytope", "--k", "3")
    assert code == 0
    assert "gram-identity" in out


def test_cayley_passes(capsys):
    code, out, _ = run_cli(capsys, "cayley", "--k", "3")
    assert code == 0
    assert "cayley-obstruction-complete" in out


def test_unknown_command_usage_error(capsys):
    code, _, err = run_cli(capsys, "bogus")
    assert code == 2


def test_missing_command_usage_error(capsys):
    assert run_cli(capsys)[0] == 2


def test_cap_exceeded_exit(capsys):
    code, _, err = run_cli(capsys, "all", "--k", "7")
    assert code == 3
    assert "exceeds cap" in err
    assert "graph build" in err


def test_spectra_cap_exceeded(capsys):
    code, _, err = run_cli(capsys, "spectra", "--k", "6")
    assert code == 3
    assert "spectrum" in err


def test_threads_validation(capsys):
    code, _, err = run_cli(capsys, "counts", "--k", "3", "--threads", "0")
    assert code == 2
    assert "--threads" in err


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("PMDG_THREADS", "2")
    code, out, _ = run_cli(capsys, "counts", "--k", "3")
    assert code == 0


def test_threads_env_invalid(monkeypatch, capsys):
    monkeypatch.setenv("PMDG_THREADS", "0")
    code, _, _ = run_cli(capsys, "counts", "--k", "3")
    assert code == 2


def test_json_format_parses(capsys):
    code, out, _ = run_cli(capsys, "counts", "--k", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert all(r["status"] == "pass" for r in payload)
    assert all(r["elapsed_ms"] == 0 for r in payload)


def test_csv_format_parses(capsys):
    code, out, _ = run_cli(capsys, "ekr", "--k", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][0] == "claim"
    assert all(row[4] == "pass" for row in rows[1:])


def test_reports_are_byte_identical(capsys):
    a = run_cli(capsys, "spectra", "--k", "3", "--format", "json")
    b = run_cli(capsys, "spectra", "--k", "3", "--format", "json")
    assert a == b


def test_timings_flag_changes_only_elapsed(capsys):
    code, out, _ = run_cli(capsys, "counts", "--k", "3", "--format", "json", "--timings")
    assert code == 0
    payload = json.loads(out)
    claims = [r["claim"] for r in payload]
    code2, out2, _ = run_cli(capsys, "counts", "--k", "3", "--format", "json")
    assert [r["claim"] for r in json.loads(out2)] == claims


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "counts", "--k", "3", "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload and payload[0]["status"] == "pass"


def test_all_default_range(capsys):
    code, out, _ = run_cli(capsys, "all", "--format", "json")
    payload = json.loads(out)
    # the honest failures: the k=3 strict bound and the n=10 eight-count
    fails = [r for r in payload if r["status"] == "fail"]
    assert code == 1
    assert {r["claim"] for r in fails} == {
        "strict-bound-nonexempt-labels",
        "small-degree-count",
    }
    ks = {r["params"].get("k") for r in payload if "k" in r["params"]}
    assert {"2", "3", "4"} <= ks
    assert "5" not in ks


def test_all_max_k_guard(capsys):
    code, _, err = run_cli(capsys, "all", "--max-k", "9")
    assert code == 3


def test_kneser_selection(capsys):
    code, out, _ = run_cli(capsys, "spectra", "--n", "6", "--k", "2")
    assert code == 0
    assert "subset-disjointness-spectrum" in out
    assert "{6^1, 1^9, -3^5}" in out


def test_kneser_selection_bad_pair(capsys):
    code, _, err = run_cli(capsys, "spectra", "--n", "3", "--k", "2")
    assert code == 2


def test_entry_point_via_module(capsys):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "pmdg", "counts", "--k", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "pass" in proc.stdout
