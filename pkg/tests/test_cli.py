import json

import pytest

from hopfzeta.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out.strip(), out.err


@pytest.mark.parametrize("argv, expected", [
    (["stuffle", "1", "1"], "2*[1,1]\n1*[2]"),
    (["shuffle", "01", "1"], "2*011\n1*101"),
    (["lyndon", "--max-weight", "2"], "0\n1\n01"),
    (["hsum", "2,1", "3"], "5/12"),
    (["bell", "3"], "X3 + 3*X1*X2 + X1^3"),
    (["diagram", "product", "[[1]]", "[[1]]"], "qs*[[1,1]]\nqc*[[0,1],[1,0]]\n1*[[1,0],[0,1]]"),
    (["diagram", "mult", "[[1,1]]"], "1"),
    (["associator", "--degree", "2"], "1*()\nzeta(2)*01\n-zeta(2)*10"),
    (["zeta", "2", "--tol", "1e-8"], "1.644934067 ± ≤1e-08"),
    (["li", "01", "0.5", "--tol", "1e-12"], "0.58224052646481 ± ≤1e-12"),
])
def test_golden(capsys, argv, expected):
    rc, out, _ = run(capsys, *argv)
    assert rc == 0 and out == expected


def test_relations_json(capsys):
    rc, out, _ = run(capsys, "relations", "--max-weight", "3", "--format", "json")
    assert rc == 0
    assert json.loads(out) == [{"word": "[1,2]", "relation": "-zeta(2,1) + zeta(3)", "residual": 0.0}]


def test_format_before_subcommand(capsys):
    rc, out, _ = run(capsys, "--format", "json", "stuffle", "1", "1")
    assert rc == 0 and json.loads(out)


@pytest.mark.parametrize("argv, code", [
    (["zeta", "1"], 2),
    (["bogus"], 2),
    (["shuffle", "0a", "1"], 2),
    (["zeta", "2", "--precision", "32"], 2),
    (["diagram", "product", "[[0]]", "[[1]]"], 2),
])
def test_exit_codes(capsys, argv, code):
    rc, _, err = run(capsys, *argv)
    assert rc == code and err


def test_harmonic_method_too_strict(capsys, tmp_path):
    # a fresh cache, otherwise an earlier value of zeta(2) answers without computing
    rc, _, err = run(capsys, "zeta", "2", "--tol", "1e-10", "--method", "harmonic", "--cache", str(tmp_path / "z.jsonl"))
    assert rc == 1 and "numeric" in err


def test_env_override(capsys, monkeypatch):
    monkeypatch.setenv("HOPFZETA_TOL", "1e-5")
    rc, out, _ = run(capsys, "zeta", "3")
    assert rc == 0 and out == "1.202057 ± ≤1e-05"
    rc, out, _ = run(capsys, "zeta", "3", "--tol", "1e-8")
    assert out.startswith("1.20205690")


def test_cache_flag(capsys, tmp_path):
    p = tmp_path / "z.jsonl"
    rc, first, _ = run(capsys, "zeta", "2,1", "--cache", str(p))
    assert rc == 0 and p.read_text().count("\n") == 1
    rc, second, _ = run(capsys, "zeta", "2,1", "--cache", str(p))
    assert second == first and p.read_text().count("\n") == 1


def test_unwritable_cache(capsys, tmp_path):
    rc, _, err = run(capsys, "zeta", "5", "--cache", str(tmp_path / "no" / "z.jsonl"))
    assert rc == 1 and err


def test_latex_output(capsys):
    rc, out, _ = run(capsys, "associator", "--degree", "2", "--format", "latex")
    assert rc == 0 and "\\zeta(2)" in out
