import json

import pytest

from sagbikit.cli import main


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_relations_a233(capsys):
    code, out, _ = _run(capsys, ["relations", "--matrix", "3x3", "--minors", "2",
                                 "--order", "diag"])
    assert code == 0
    assert "#SAGBI\t11" in out
    assert "#rel\t0" in out


def test_relations_g24(capsys):
    code, out, _ = _run(capsys, ["relations", "--matrix", "2x4", "--minors", "2",
                                 "--order", "diag"])
    assert code == 0
    assert "#SAGBI\t6" in out and "#rel\t1" in out
    assert "rel\tY1*Y6 - Y2*Y5 + Y3*Y4" in out


def test_sagbi_inline_generators(capsys):
    code, out, _ = _run(capsys, ["sagbi", "--vars", "x,y", "--gen", "x+y",
                                 "--gen", "y", "--order", "lex"])
    assert code == 0
    assert "#SAGBI\t2" in out


def test_parse_error_exit_code(capsys):
    code, _, err = _run(capsys, ["sagbi", "--vars", "x,y", "--gen", "x + + y",
                                 "--order", "lex"])
    assert code == 2
    assert "line 1" in err


def test_missing_generators_is_usage_error(capsys):
    code, _, err = _run(capsys, ["sagbi", "--vars", "x,y", "--order", "lex"])
    assert code == 2
    assert "generator source" in err


def test_matchings_tsv_3x3(capsys):
    code, out, _ = _run(capsys, ["matchings", "--matrix", "3x3", "--minors", "2",
                                 "--workers", "1"])
    assert code == 0
    lines = out.splitlines()
    rows = [l for l in lines if l and not l.startswith(("#", "canonical"))]
    assert len(rows) == 5
    assert "# total\t102" in out


def test_matchings_json_deterministic(capsys):
    argv = ["matchings", "--matrix", "3x3", "--minors", "2",
            "--format", "json", "--workers", "1"]
    code1, out1, _ = _run(capsys, argv)
    code2, out2, _ = _run(capsys, argv)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["total"] == 102 and payload["orbits"] == 5
    assert sum(1 for r in payload["rows"] if r["full_support"]) == 1


def test_matchings_random_requires_seed(capsys):
    code, _, err = _run(capsys, ["matchings", "--matrix", "3x3", "--minors", "2",
                                 "--mode", "random"])
    assert code == 2 and "seed" in err


def test_verify_a233_cli(capsys):
    code, out, _ = _run(capsys, ["verify", "--case", "A233"])
    assert code == 0
    assert "PASS" in out


def test_verify_g37_cli_requires_seed(capsys):
    code, _, err = _run(capsys, ["verify", "--case", "G37_sampled"])
    assert code == 2 and "seed" in err


def test_verify_g37_cli_small(capsys):
    code, out, _ = _run(capsys, ["verify", "--case", "G37_sampled",
                                 "--count", "5", "--seed", "7"])
    assert code == 0
    assert "PASS" in out


def test_hilbert_semigroup(capsys):
    code, out, _ = _run(capsys, ["hilbert", "--matrix", "3x6", "--minors", "3",
                                 "--order", "diag", "--kind", "semigroup",
                                 "--kmax", "4"])
    assert code == 0
    assert "4\t4116" in out and "dim\t10" in out
