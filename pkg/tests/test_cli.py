import csv
import io
import json
import subprocess
import sys

import pytest

from symdouble import __version__
from symdouble.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_match_worked_example(capsys):
    code, out, _ = run(capsys, "match", "1024/945")
    assert code == 0
    assert out.strip() == "Matched m=6, digits 1110110001(0)^∞, interval 111011 = (13/12, 63/58)"


def test_match_non_matching(capsys):
    code, out, _ = run(capsys, "match", "6/5")
    assert code == 0 and out.startswith("No matching (orbit of 1 cycles")


def test_freq_high_region(capsys):
    code, out, _ = run(capsys, "freq", "8/5")
    assert code == 0 and out.splitlines()[0] == "5/8 (0.625)"


def test_freq_alpha_one_and_markov(capsys):
    assert run(capsys, "freq", "1")[1].splitlines()[0] == "1/2 (0.5)"
    code, out, _ = run(capsys, "freq", "6/5", "--depth", "30")
    assert out.splitlines()[0] == "2/3 (0.666666666666667)" and "series check (depth 30)" in out


def test_locate_prints_quadratic_interval(capsys):
    code, out, _ = run(capsys, "locate", "1024/945", "--precision-bits", "64")
    assert code == 0
    assert "a(111011) = 3/11, quadratic interval ((√37−5)/4, (√165−9)/14)" in out


def test_sweep_grid_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--grid", "6/5:3/2:1/100")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith(f"# symdouble {__version__} sweep") and lines[1].startswith("# options:")
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[2:]))))
    assert len(rows) == 31
    assert all(r["mu_decimal"] == "0.666666666666667" for r in rows)


def test_sweep_json_with_birkhoff(capsys):
    code, out, _ = run(capsys, "sweep", "7/4:2:1/4", "--format", "json", "--birkhoff", "2000", "--seed", "4")
    doc = json.loads(out)
    assert code == 0 and len(doc["records"]) == 2
    assert doc["records"][0]["seed"] == 4 and doc["records"][0]["birkhoff_estimate"] is not None


def test_sweep_needs_grid_or_length(capsys):
    assert run(capsys, "sweep")[0] == 2


def test_catalog_to_file(tmp_path, capsys):
    path = tmp_path / "catalog.json"
    code, out, _ = run(capsys, "catalog", "6", "--out", str(path))
    doc = json.loads(path.read_text())
    assert code == 0 and out.strip() == f"wrote {path}"
    assert doc["header"][0] == f"symdouble {__version__} catalog max_len=6"
    assert any(r["omega"] == "111011" and r["L"] == "13/12" for r in doc["records"])


def test_identical_runs_are_byte_identical(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    outputs = []
    for _ in range(2):
        assert run(capsys, "sweep", "--grid", "5/4:7/4:1/8", "--birkhoff", "5000", "--seed", "9", "--out", str(path))[0] == 0
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["match", "abc"], 3),
        (["match", "3/0"], 3),
        (["freq", "1,5"], 3),
        (["match", "5/2"], 4),
        (["match", "1"], 4),
        (["freq", "1/2"], 4),
        (["sweep", "--grid", "1:3:1/2"], 4),
        (["sweep", "--grid", "1:x:1/2"], 3),
        (["catalog", "4", "--out", "/nonexistent-dir/out.json"], 5),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err.startswith("error:")


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-len", "8")
    assert code == 0
    assert out.splitlines()[-1].endswith("checks passed")
    assert "FAIL" not in out


def test_verify_reports_failure(capsys, monkeypatch):
    from symdouble import cli, suite

    def broken(**kwargs):
        return [suite.CheckResult("always fails", False, "forced")]

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out, _ = run(capsys, "verify")
    assert code == 1 and "FAIL  always fails" in out


def test_simulate(capsys):
    code, out, _ = run(capsys, "simulate", "13/10", "--iterations", "20000", "--seed", "2")
    assert code == 0 and "exact 2/3" in out


def test_conjecture_and_coverage(capsys):
    code, out, _ = run(capsys, "conjecture", "--max-len", "8")
    assert code == 0 and out.startswith("blocks up to length 8: 0 ordered pairs")
    code, out, _ = run(capsys, "coverage", "--max-len", "4")
    assert code == 0 and out.strip().endswith(f"{113 / 168:.12f}")


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("SYMDOUBLE_SEED", "7")
    monkeypatch.setenv("SYMDOUBLE_ITERATIONS", "1000")
    code, out, _ = run(capsys, "simulate", "13/10")
    assert "iterations=1000 seed=7" in out
    code, out, _ = run(capsys, "simulate", "13/10", "--seed", "8")
    assert "seed=8" in out


def test_bad_env_value(capsys, monkeypatch):
    monkeypatch.setenv("SYMDOUBLE_SEED", "seven")
    assert run(capsys, "match", "4/3")[0] == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "symdouble", "freq", "4/3"], capture_output=True, text=True, check=False
    )
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "2/3 (0.666666666666667)"
