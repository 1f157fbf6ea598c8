import json
import subprocess
import sys

import pytest

from turangood.cli import EXIT_OK, EXIT_USAGE, EXIT_VERDICT, main
from turangood.graph6 import decode
from turangood.graphs import is_isomorphic
from turangood.turan import CSV_HEADER, TuranSpec, turan_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_passes_and_is_byte_stable(capsys):
    code, first, err = run(capsys, "certify", "--rmax", "60", "--workers", "1", "--no-timing")
    assert code == EXIT_OK
    assert "reference mismatch P3[F6]" in err
    _, second, _ = run(capsys, "certify", "--rmax", "60", "--workers", "1", "--no-timing")
    assert first == second
    body = json.loads(first)
    assert body["verdict"]["math_ok"] is True
    assert body["tight_set"] == [0, 3, 8, 9, 10]
    assert len(body["per_r"]) == 57


def test_certify_strict_and_range_errors(capsys):
    code, _, _ = run(capsys, "certify", "--rmax", "10", "--strict-fixtures", "--no-timing")
    assert code == EXIT_VERDICT
    code, _, err = run(capsys, "certify", "--rmin", "3", "--rmax", "10")
    assert code == EXIT_USAGE and "rmin" in err
    code, _, _ = run(capsys, "certify", "--rmin", "8", "--rmax", "5")
    assert code == EXIT_USAGE


def test_certify_writes_output_file(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, stdout, _ = run(capsys, "certify", "--rmax", "20", "--output", str(out))
    assert code == EXIT_OK and stdout == ""
    assert "timing" in json.loads(out.read_text())


def test_expand(capsys):
    code, out, _ = run(capsys, "expand")
    body = json.loads(out)
    assert code == EXIT_OK
    assert body["P3"]["reference_mismatch"] == ["F6"]
    assert body["P3"]["coefficients"]["F6"] == "r^2 - 4*r + 4"
    assert body["P1"]["reference_mismatch"] == body["P2"]["reference_mismatch"] == []
    code, text, _ = run(capsys, "expand", "--format", "text", "--strict-fixtures")
    assert code == EXIT_VERDICT
    assert "differs from reference at F6" in text


def test_counts(capsys):
    assert run(capsys, "multipartite", "--parts", "1,1,1,1")[1] == "12\n"
    assert run(capsys, "multipartite", "--parts", "2,2,1,1")[1] == "112\n"
    code, out, _ = run(capsys, "count-turan", "--r", "4", "--n", "8")
    body = json.loads(out)
    assert code == EXIT_OK and body["nu_p3"] == 504 and body["k4"] == 16
    assert is_isomorphic(decode(body["graph6"]), turan_graph(TuranSpec(4, 8)))
    assert run(capsys, "count-turan", "--r", "4", "--n", "100", "--format", "text")[0] == EXIT_OK


def test_delta(capsys):
    code, out, _ = run(capsys, "delta", "--parts", "3,1,1", "--from", "1", "--to", "2", "--format", "json")
    body = json.loads(out)
    assert code == EXIT_OK
    assert body["delta"] == body["closed_form"] == 10
    assert body["other_parts_weighted_form"] == 8
    assert run(capsys, "delta", "--parts", "3,1", "--from", "1", "--to", "1")[0] == EXIT_USAGE
    assert run(capsys, "delta", "--parts", "0,3", "--from", "1", "--to", "2")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["delta", "--parts", "3,x", "--from", "1", "--to", "2"])
    assert exc.value.code == EXIT_USAGE


def test_search_and_witnesses(capsys, tmp_path):
    wfile = tmp_path / "w.g6"
    code, out, _ = run(
        capsys, "search", "--n", "6", "--target", "P3", "--forbid", "K5",
        "--witnesses", str(wfile), "--expect-turan", "--no-timing",
    )
    body = json.loads(out)
    assert code == EXIT_OK
    assert body["turan_value"] == 112 and body["turan_unique_witness"] and body["evidence_only"]
    lines = [s for s in wfile.read_text().splitlines() if s]
    assert len(lines) == 1 and is_isomorphic(decode(lines[0]), turan_graph(TuranSpec(4, 6)))
    assert run(capsys, "search", "--n", "6", "--target", "P3", "--forbid", "C4", "--expect-turan")[0] == EXIT_USAGE
    assert run(capsys, "search", "--n", "12", "--target", "P3", "--forbid", "K5")[0] == EXIT_USAGE
    assert run(capsys, "search", "--n", "6", "--target", "P3", "--forbid", "E3")[0] == EXIT_USAGE


def test_search_checkpoint_flag(capsys, tmp_path):
    ckpt = tmp_path / "c"
    a = run(capsys, "search", "--n", "7", "--target", "P3", "--forbid", "K4", "--checkpoint", str(ckpt), "--no-timing")
    assert ckpt.exists()
    b = run(capsys, "search", "--n", "7", "--target", "P3", "--forbid", "K4", "--checkpoint", str(ckpt), "--no-timing")
    assert a == b


def test_zykov(capsys):
    code, out, _ = run(capsys, "zykov", "--n", "7", "--t", "3", "--q", "4", "--no-timing")
    assert code == EXIT_OK and json.loads(out)["optimum"] == 12
    assert run(capsys, "zykov", "--n", "7", "--t", "4", "--q", "4")[0] == EXIT_USAGE


def test_convergence(capsys):
    code, out, _ = run(capsys, "convergence", "--nmax", "60")
    lines = out.splitlines()
    assert code == EXIT_VERDICT  # 12/n is never met
    assert lines[0] == CSV_HEADER and len(lines) == 22
    code, out, _ = run(capsys, "convergence", "--nmax", "60", "--tolerance", "14", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["within_tolerance"] is True
    assert run(capsys, "convergence", "--nmin", "3", "--nmax", "10")[0] == EXIT_USAGE


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        main(["multipartite"])
    assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "turangood", "multipartite", "--parts", "2,2,2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "84\n"
