import csv
import io
import json
import subprocess
import sys

import pytest

from uppermccool.cli import CAPS, RunConfig, UsageError, main, parse_config


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_present_json_schema(capsys):
    code, out, _ = run(capsys, "present", "--n", "4", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["n"] == 4 and d["rank"] == 4 and len(d["rows"]) == 14
    for row in d["rows"]:
        assert set(row) == {"label", "terms"}
        for t in row["terms"]:
            assert len(t["pos"]) == 3 and "/" in t["coef"]
            assert all("," in k for k in t["mono"])


def test_present_text(capsys):
    code, out, _ = run(capsys, "present", "--n", "4")
    assert code == 0 and "g4[321](l4=4)" in out


def test_present_csv(capsys):
    code, out, _ = run(capsys, "present", "--n", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["label", "pos", "mono", "coef"]


def test_groebner(capsys):
    code, out, _ = run(capsys, "groebner", "--n", "4", "--format", "json")
    assert code == 0
    assert "PASS" in out


def test_hilbert_json(capsys):
    code, out, _ = run(capsys, "hilbert", "--n", "4", "--format", "json", "--terms", "5")
    assert code == 0
    d = json.loads(out)
    assert d["expansion"] == [4, 10, 16, 23, 31]
    assert set(d["series"]) == {"num", "denomPower"}
    assert d["theta"][:5] == [6, 4, 10, 16, 23]


@pytest.mark.parametrize("module", ["B", "Bprime", "K"])
def test_hilbert_modules(capsys, module):
    code, _, _ = run(capsys, "hilbert", "--n", "4", "--module", module)
    assert code == 0


def test_chen_csv(capsys):
    code, out, _ = run(capsys, "chen", "--n", "4", "--k-max", "5", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["k", "theta", "provenance"]
    assert [int(r[1]) for r in rows[1:]] == [6, 4, 10, 16, 23]


def test_resonance(capsys):
    code, out, _ = run(capsys, "resonance", "--n", "4")
    assert code == 0 and "L43 (dim 3, isotropy 1)" in out


def test_resonance_j43_reports_failure(capsys):
    code, out, _ = run(capsys, "resonance", "--n", "4", "--check", "j43")
    assert code == 1 and "FAIL" in out


def test_compare(capsys):
    code, out, _ = run(capsys, "compare", "--n", "5", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["upper"]["max_dim"] == 4 and d["full"]["max_dim"] == 3
    assert d["chen"]["pairwise_distinct"]


def test_scheme(capsys):
    code, out, _ = run(capsys, "scheme", "--n", "4")
    assert code == 0


def test_usage_errors(capsys):
    assert run(capsys, "present")[0] == 2
    assert run(capsys, "present", "--n", "1")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "groebner", "--n", str(CAPS["groebner"] + 1))[0] == 2


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "hilbert", "--n", "4", "--pair-budget", "1")
    assert code == 3 and "budget" in err


def test_out_file(tmp_path, capsys):
    p = tmp_path / "chen.json"
    assert main(["chen", "--n", "4", "--format", "json", "--out", str(p)]) == 0
    assert json.loads(p.read_text(encoding="utf-8"))["theta"][3] == 16


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig("chen", n=4, k_max=0).validate()
    cfg = parse_config(["groebner", "--n", "6", "--no-cap"])
    assert cfg.n == 6 and cfg.no_cap


def test_verify_all_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify-all", "--n-max", "4")
    code2, out2, _ = run(capsys, "verify-all", "--n-max", "4")
    assert code1 == code2 == 0
    assert out1 == out2
    names = [line.split(None, 1)[1] for line in out1.splitlines()[:-1] if not line.startswith(" ")]
    assert names == sorted(names)


def test_verify_all_parallel_same_output(capsys, monkeypatch):
    _, serial, _ = run(capsys, "verify-all", "--n-max", "4", "--format", "csv")
    monkeypatch.setenv("UPPERMCCOOL_THREADS", "2")
    _, par, _ = run(capsys, "verify-all", "--n-max", "4", "--format", "csv")
    assert serial == par


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "uppermccool", "chen", "--n", "3", "--k-max", "3"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "theta_3 = 2" in res.stdout


def test_help_lists_csv_columns():
    res = subprocess.run([sys.executable, "-m", "uppermccool", "--help"], capture_output=True, text=True)
    assert res.returncode == 0 and "CSV columns" in res.stdout
