import json
import subprocess
import sys

import pytest

from mod4forms import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_qexp_f(capsys):
    code, out = run(capsys, "qexp", "f", "--prec", "8")
    assert code == 0
    assert out.out.strip() == "0,1,1416,842654,271386544,50558981478,5356057726176,290719505955308"


def test_qexp_reduced(capsys):
    code, out = run(capsys, "qexp", "delta", "--prec", "10", "--mod", "2^1")
    assert code == 0
    assert out.out.strip() == "0,1,0,0,0,0,0,0,0,1"
    code, out = run(capsys, "qexp", "f", "--prec", "5", "--mod", "4")
    assert out.out.strip() == "0,1,0,2,0"


@pytest.mark.parametrize("text,m", [("4", 2), ("2^2", 2), ("2**3", 3), ("2", 1)])
def test_parse_modulus(text, m):
    assert cli.parse_modulus(text) == m


@pytest.mark.parametrize(
    "argv",
    [
        ["qexp", "nope", "--prec", "5"],
        ["qexp", "f", "--prec", "0"],
        ["qexp", "f", "--prec", "5", "--mod", "6"],
        ["qexp", "delta", "--prec", "1"],
        ["check", "frobenius", "--field", "M"],
        ["check"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 2


def test_check_torsion_prints_matrices(capsys):
    code, out = run(capsys, "check", "torsion", "--jobs", "1")
    assert code == 0
    assert "M_r = [[1, 2], [1, 1]]" in out.out
    assert "M_s = [[3, 2], [2, 3]]" in out.out


def test_check_congruence_small_bound(capsys):
    code, out = run(capsys, "check", "congruence", "--bound", "1", "--jobs", "1")
    assert code == 0
    assert "PASS" in out.out


def test_check_squares_reports_the_failing_closed_form(capsys):
    code, out = run(capsys, "check", "squares", "--max-n", "50", "--max-prime", "200")
    assert code == 1
    assert "FAIL  eisenstein-dirichlet " in out.out
    assert "PASS  eisenstein-dirichlet-squarefree" in out.out


def test_json_report_is_deterministic(tmp_path, capsys):
    reports = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        code, _ = run(capsys, "check", "f-rule", "--max-prime", "200", "--report", str(path), "--jobs", "1")
        assert code == 0
        data = json.loads(path.read_text())
        for r in data["results"]:
            assert set(r) == {"checkName", "parameters", "verdict", "witness", "elapsedMillis"}
            r.pop("elapsedMillis")
        reports.append(data)
    assert reports[0] == reports[1]
    assert reports[0]["results"][0]["verdict"] == "pass"


def test_figures_are_written(tmp_path, capsys):
    code, out = run(capsys, "check", "weight1", "--max-prime", "100", "--figures", str(tmp_path), "--jobs", "1")
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["congruence_residues.png", "frobenius_traces.png", "hasse_traces.png"]
    assert all((tmp_path / n).read_bytes()[:4] == b"\x89PNG" for n in names)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mod4forms", "qexp", "e4", "--prec", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "1,240,2160"
