"""CLI behavior: JSON schemas, exit codes, qmode flags, and the corpus
runner."""

import json

import pytest

from ratexact.cli import main, run_corpus_line


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


def test_decide_not_exact_json(capsys):
    code, out, _ = run_json(capsys, "decide", "--pair", "dx-dy",
                            "--expr", "1/(x+y)", "--json")
    assert code == 0
    assert out["exact"] is False
    assert out["witness"]["kind"] == "mixed_denominator"
    assert "timing_ms" not in out


def test_decide_exact_json(capsys):
    code, out, _ = run_json(capsys, "decide", "--pair", "dqx-sy",
                            "--q-symbolic", "--expr", "1/(x*y)", "--json")
    assert code == 0
    assert out["exact"] is True
    assert set(out) == {"exact", "pair", "qmode", "g", "h"}


def test_decide_timing_flag(capsys):
    code, out, _ = run_json(capsys, "decide", "--pair", "dx-dy",
                            "--expr", "1/(x+y)", "--json", "--timing")
    assert code == 0
    assert isinstance(out["timing_ms"], int)


def test_decide_text_output(capsys):
    code, out, _ = run(capsys, "decide", "--pair", "dx-dy",
                       "--expr", "1/(x*(x+1)*y)")
    assert code == 0
    assert out.splitlines()[0] == "exact"
    assert out.splitlines()[1].startswith("g = ")


def test_decide_rational_q(capsys):
    code, out, _ = run_json(capsys, "decide", "--pair", "dqx-sy",
                            "--q", "2/3", "--expr", "1/(x*y)", "--json")
    assert code == 0
    assert out["exact"] is True


def test_decide_root_of_unity(capsys):
    code, out, _ = run_json(capsys, "decide", "--pair", "dqx-dy",
                            "--root-of-unity", "2", "--expr", "x/y",
                            "--json")
    assert code == 0
    assert out["exact"] is True


def test_syntax_error_exit_2(capsys):
    code, _, err = run(capsys, "decide", "--pair", "dx-dy",
                       "--expr", "1/(x+")
    assert code == 2
    assert "error" in err


def test_zero_denominator_exit_2(capsys):
    code, _, err = run(capsys, "decide", "--pair", "dx-dy", "--expr", "1/0")
    assert code == 2


def test_q_flag_without_q_pair_still_parses(capsys):
    # plain mode rejects q in the expression
    code, _, err = run(capsys, "decide", "--pair", "dx-dy",
                       "--expr", "q/x")
    assert code == 2


def test_reduce_hermite_json(capsys):
    code, out, _ = run_json(capsys, "reduce", "--flavor", "hermite",
                            "--expr", "1/(x*y^2)", "--json")
    assert code == 0
    assert out["flavor"] == "hermite"
    assert out["terms"] == []
    assert out["h"] == "(-1)/(y*x)"


def test_reduce_abramov_json(capsys):
    code, out, _ = run_json(capsys, "reduce", "--flavor", "abramov",
                            "--expr", "1/(y*(y+1))", "--json")
    assert code == 0
    assert out["terms"] == []


def test_reduce_tau_rou_json(capsys):
    code, out, _ = run_json(capsys, "reduce", "--flavor", "tau-rou",
                            "--root-of-unity", "2", "--expr", "x/y",
                            "--json")
    assert code == 0
    assert out["trace_part"] == "0"


def test_residue_json(capsys):
    code, out, _ = run_json(capsys, "residue", "--kind", "dy", "--at", "y",
                            "--expr", "1/(y^2*(y+1))", "--json")
    assert code == 0
    assert out["residue"] == "-1"


def test_residue_sigma(capsys):
    code, out, _ = run(capsys, "residue", "--kind", "sy", "--at", "y",
                       "--mult", "1", "--expr", "1/y + 1/(y+1)")
    assert code == 0
    assert out.strip() == "2"


def test_factor_json(capsys):
    code, out, _ = run_json(capsys, "factor",
                            "--expr", "x^2*y + x*y^2", "--json")
    assert code == 0
    bases = sorted(b for b, _ in out["factors"])
    assert bases == ["x", "y", "y + x"]


def test_factor_rejects_fraction(capsys):
    code, _, err = run(capsys, "factor", "--expr", "1/x")
    assert code == 2


def test_usage_error_exit_2(capsys):
    assert main(["decide", "--pair", "nope", "--expr", "x"]) == 2


def test_corpus_file(tmp_path, capsys):
    p = tmp_path / "cases.txt"
    p.write_text(
        "# comment and blank lines are skipped\n"
        "\n"
        "dx-dy | none | 1/(x+y) | not-exact | mixed_denominator\n"
        "dqx-sy | symbolic | 1/(x*y) | exact\n"
        "dx-dy | none | 1/(x+ | error\n")
    code, out, _ = run(capsys, "corpus", str(p))
    assert code == 0
    assert "3/3 passed" in out


def test_corpus_failure_exit_1(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("dx-dy | none | 1/(x+y) | exact\n")
    code, out, _ = run(capsys, "corpus", str(p))
    assert code == 1
    assert "0/1 passed" in out


def test_corpus_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "corpus", "/nonexistent/path.txt")
    assert code == 2


def test_run_corpus_line_witness_mismatch():
    ok, _ = run_corpus_line(
        "dx-dy | none | 1/(x+y) | not-exact | non_summable_residue")
    assert not ok


def test_bundled_corpus_deterministic(capsys):
    code1, out1, _ = run(capsys, "corpus", "corpus/cases.txt", "--json")
    code2, out2, _ = run(capsys, "corpus", "corpus/cases.txt", "--json")
    assert code1 == code2 == 0
    assert out1 == out2
