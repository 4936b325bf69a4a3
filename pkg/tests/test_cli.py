import json

import pytest

from idp.cli import _glue_negative_values, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_compute_text(capsys):
    code, out = run(capsys, "compute", "--regime", "even-even", "--n", "2", "--ell", "1")
    assert code == 0
    assert "[1] Ec^(2)" in out.out and "[1] F^(2)" in out.out


def test_compute_json_and_methods_agree(capsys):
    outs = []
    for method in ("expansion", "recursive", "expand"):
        code, out = run(capsys, "compute", "--regime", "dvd", "--n", "3", "--ell", "-1", "--method", method, "--format", "json")
        assert code == 0
        outs.append(json.loads(out.out))
    assert outs[0] == outs[1] == outs[2]


def test_compute_closed_t_and_expr(capsys):
    code, out = run(capsys, "compute", "--regime", "odd-even", "--n", "2", "--ell", "0", "--method", "closed-t")
    assert code == 0 and "t^2" in out.out
    code, out = run(capsys, "compute", "--expr", "[2]*[2] - 2")
    assert code == 0 and out.out.strip() == "q^2 + q^-2"


def test_compute_latex(capsys):
    code, out = run(capsys, "compute", "--regime", "even-odd", "--n", "1", "--ell", "1", "--format", "latex")
    assert code == 0 and "K^{-1}" in out.out


def test_polys(capsys):
    code, out = run(capsys, "polys", "--family", "frakp", "--n", "2")
    assert code == 0 and out.out.strip() == "x^2 + (-1)"
    code, out = run(capsys, "polys", "--family", "p", "--n", "3", "--divided", "--at", "[4]", "--format", "json")
    assert code == 0 and json.loads(out.out)["integral"] is True


def test_module_action(capsys):
    code, out = run(capsys, "module-action", "--regime", "odd-odd", "--n", "2", "--ell", "1", "--lambda", "3", "--check-lattice", "--format", "json")
    body = json.loads(out.out)
    assert code == 0 and body["lattice"]["ok"] and body["mu"] == 7
    code, out = run(capsys, "module-action", "--regime", "even-even", "--n", "2", "--ell", "2", "--lambda", "1", "--check-lattice")
    assert code == 1 and "lattice: fail" in out.out
    code, out = run(capsys, "module-action", "--regime", "even-even", "--n", "2", "--ell", "2", "--lambda", "1", "--threshold")
    assert code == 0 and "threshold lambda" in out.out


def test_genk(capsys):
    code, out = run(capsys, "genk", "--kappa", "2*q^2 + 3 + 2*q^-2", "--weight", "even", "--lambda", "6", "--format", "json")
    body = json.loads(out.out)
    assert code == 0 and body["diamond"] == -1 and body["lattice"]["ok"]
    code, out = run(capsys, "genk", "--kappa", "q^2 + 3")
    assert code == 2 and "bar-invariant" in out.err


def test_verify_exit_codes(capsys):
    code, out = run(capsys, "verify", "expansion-equality", "--n-max", "4", "--ell", "-1..1")
    assert code == 0 and "0 fail" in out.out
    code, out = run(capsys, "verify", "--suite", "lattice", "--regime", "odd-odd", "--format", "json")
    body = json.loads(out.out)
    assert code == 0 and body["ok"]
    assert all("threshold" in c["detail"] for c in body["cases"])


def test_verify_reports_are_deterministic(capsys):
    args = ("verify", "sigma", "--n-max", "3", "--ell", "0..1", "--format", "json")
    _, a = run(capsys, *args)
    _, b = run(capsys, *args)
    assert a.out == b.out
    assert "wall_time_s" not in a.out
    _, c = run(capsys, *args, "--timing")
    assert "wall_time_s" in c.out


def test_verify_missing_golden_dir_fails(capsys, tmp_path):
    code, out = run(capsys, "verify", "golden-examples", "--golden-dir", str(tmp_path))
    assert code == 1 and "no golden files" in out.out


def test_table(capsys):
    code, out = run(capsys, "table")
    assert code == 0 and "DIFF" not in out.out


def test_table_reports_diff(capsys, tmp_path):
    (tmp_path / "p_2.txt").write_text("x^3\n")
    code, out = run(capsys, "table", "--golden-dir", str(tmp_path))
    assert code == 1 and "DIFF p_2.txt" in out.out


def test_bad_regime(capsys):
    code, out = run(capsys, "compute", "--regime", "sideways", "--n", "1", "--ell", "0")
    assert code == 2


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_glue_negative_values():
    assert _glue_negative_values(["--ell", "-1..1", "--n", "2"]) == ["--ell=-1..1", "--n", "2"]
