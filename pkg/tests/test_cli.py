import json
import subprocess
import sys
from pathlib import Path

import pytest

from selfconv.cli import alpha_from_json, alpha_to_json, main

GOLDEN = Path(__file__).parent / "golden" / "table1.csv"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_alpha_csv_matches_golden(capsys):
    code, out, _ = run(capsys, "alpha", "--max-n", "10", "--algo", "all", "--format", "csv")
    assert code == 0
    assert out == GOLDEN.read_text()


def test_alpha_single_cell(capsys):
    code, out, _ = run(capsys, "alpha", "--max-n", "1", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["k\\n,1", "0,1"]


def test_alpha_all_algorithms_to_15(capsys):
    code, out, _ = run(capsys, "alpha", "--max-n", "15", "--algo", "all")
    assert code == 0
    assert "[PASS]" in out


def test_alpha_json_round_trip(capsys):
    code, out, _ = run(capsys, "alpha", "--max-n", "9", "--algo", "all", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["command"] == "alpha" and obj["pass"] is True
    assert {"i": 3, "n": 6, "num": "109", "den": "6"} in obj["cells"]
    table, algo, report = alpha_from_json(out)
    assert alpha_to_json(table, algo, report) == out


def test_alpha_latex(capsys):
    code, out, _ = run(capsys, "alpha", "--max-n", "4", "--format", "latex")
    assert code == 0
    assert out.startswith(r"\begin{tabular}")
    assert r"1 & 0 & 1 & 7 & 38 \\" in out


def test_bad_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["alpha", "--max-n", "0"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "corollary", "--p", "0.5"])
    assert exc.value.code == 2


def test_beta_output(capsys):
    code, out, _ = run(capsys, "beta", "--n", "3")
    assert code == 0
    assert out.splitlines() == ["beta_(3,0)(x) = 2*x^2 - 2",
                                "beta_(3,1)(x) = 2*x^2 - 3*x - 2",
                                "beta_(3,2)(x) = 1/2*x^2 - 3/2*x + 1"]
    code, out, _ = run(capsys, "beta", "--n", "1")
    assert out == "beta_(1,0)(x) = 1\n"


def test_beta_last_polynomial(capsys):
    code, out, _ = run(capsys, "beta", "--n", "7", "--s", "6", "--format", "json")
    coeffs = json.loads(out)["polynomials"][0]["coeffs"]
    assert coeffs[-1] == {"num": "1", "den": "720"}
    assert coeffs[0] == {"num": "1", "den": "1"}  # 6!/720


def test_beta_out_of_range_s(capsys):
    code, _, err = run(capsys, "beta", "--n", "3", "--s", "3")
    assert code == 2
    assert "0 <= s < n" in err


def test_fib(capsys):
    code, out, _ = run(capsys, "fib", "--len", "6")
    assert code == 0
    assert out.splitlines()[0] == "U: 0, 1, 1, 2, 3, 5, 8"


def test_verify_corollary(capsys):
    code, out, _ = run(capsys, "verify", "corollary", "--p", "1", "--q", "-1",
                       "--k", "2", "--n", "6", "--j-max", "40")
    assert code == 0
    assert out.rstrip().endswith("1/1 checks passed")


def test_verify_degenerate_spec(capsys):
    code, _, err = run(capsys, "verify", "corollary", "--p", "2", "--q", "1")
    assert code == 2
    assert "double root: Δ=0" in err


def test_verify_tribonacci(capsys):
    code, out, _ = run(capsys, "verify", "tribonacci", "--n-max", "200", "--format", "json")
    assert code == 0
    assert json.loads(out)["pass"] is True


@pytest.mark.parametrize("suite", ["series", "coef", "pde", "polarization"])
def test_verify_suites(capsys, suite):
    code, _, _ = run(capsys, "verify", suite, "--p", "3", "--q", "2", "--order", "12",
                     "--y-order", "6")
    assert code == 0


def test_verify_parallel_matches_serial(capsys):
    argv = ["verify", "series", "--p", "1/2", "--q", "-3", "--order", "15", "--format", "csv"]
    serial = run(capsys, *argv)
    parallel = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_invariant_tribonacci(capsys):
    code, out, _ = run(capsys, "invariant", "--cubic", "1/3,1/3,-1")
    assert code == 0
    assert "j (closed form)  = -44/27" in out
    assert "108 j = -176" in out
    assert "A = 36*x^4 + 48*x^3 + 64*x^2 + 32*x + 12" in out


def test_invariant_zero_cubic(capsys):
    code, out, _ = run(capsys, "invariant", "--cubic", "0,0,0")
    assert code == 0
    assert "linearization skipped" in out


def test_invariant_routes_agree(capsys):
    code, out, _ = run(capsys, "invariant", "--cubic", "1,2,3", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["j"] == obj["j_transvection"]


def test_oeis_check(capsys):
    code, _, _ = run(capsys, "oeis-check", "--algo", "series")
    assert code == 0


def test_out_file(capsys, tmp_path):
    target = tmp_path / "t.csv"
    code, out, _ = run(capsys, "alpha", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == GOLDEN.read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "selfconv", "alpha", "--max-n", "10", "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == GOLDEN.read_text()


def test_all_command(capsys):
    code, out, _ = run(capsys, "all", "--jobs", "2")
    assert code == 0, out
    assert "FAIL" not in out


def test_discrepancy_exits_1(capsys, monkeypatch):
    import selfconv.linearize as lin
    real = lin.ALGORITHMS["conv"]
    monkeypatch.setitem(lin.ALGORITHMS, "conv", lambda n: real(n).perturbed(2, 5, 1))
    code, out, _ = run(capsys, "alpha", "--max-n", "6", "--algo", "all")
    assert code == 1
    assert "[FAIL]" in out and "alpha~_(2,5)" in out
