import json

import pytest
from click.testing import CliRunner

from csstlab import io
from csstlab.classical import classify, from_rows
from csstlab.classical.cyclic import poly_from_exponents, poly_to_bits
from csstlab.cli import main
from csstlab.css import css_params, make_css
from csstlab.csst import csst_check
from csstlab.exceptions import ParseError, PreconditionError
from csstlab.report import CodeReport, error_json, report_json
from csstlab.triortho import quantum_reed_muller_15

G89 = poly_to_bits(poly_from_exponents(
    [45, 44, 42, 38, 36, 35, 33, 32, 30, 27, 26, 24, 23, 20, 19, 18, 16, 15, 12, 8, 5, 4, 3, 0]))


def run(*args):
    res = CliRunner().invoke(main, list(args), catch_exceptions=False)
    return res.exit_code, res.output


@pytest.fixture
def p41(tmp_path):
    path = tmp_path / "p41.json"
    path.write_text(io.format_pair_json(make_css(from_rows(["1111", "1100"]), from_rows(["1111"]))))
    return str(path)


def test_parse_code_roundtrip():
    C = from_rows(["1101000", "0110100"])
    assert io.parse_code(io.format_code(C)) == C


def test_parse_errors():
    with pytest.raises(ParseError) as e:
        io.parse_code("4 2\n1100\n110\n")
    assert e.value.line == 3
    with pytest.raises(ParseError):
        io.parse_code("4 2\n1100\n1100\n")
    with pytest.raises(ParseError):
        io.parse_code("")
    with pytest.raises(ParseError):
        io.parse_poly_spec("7-1101")
    with pytest.raises(ParseError):
        io.parse_pair_json('{"n": 3}')


def test_poly_spec_89():
    C = io.parse_poly_spec(f"89;{G89}")
    assert (C.n, C.k) == (89, 44) and classify(C).is_self_orthogonal


def test_selfdual_db():
    codes = io.bundled_selfdual_codes()
    assert set(codes) == {"sd18", "sd20"}
    text = io.format_selfdual_db(codes)
    assert io.parse_selfdual_db(text) == codes
    bad = "# bad 4 2 selfdual\n4 2\n1100\n1010\n"
    with pytest.raises(ParseError) as e:
        io.parse_selfdual_db(bad)
    assert "selfdual check failed" in str(e.value) and e.value.line == 1


def test_pair_json_rechecks_containment():
    with pytest.raises(Exception):
        io.parse_pair_json('{"n": 4, "c1": ["1100"], "c2": ["0011"]}')


def test_parse_phi():
    c1 = from_rows(["1111", "1100"])
    assert io.parse_phi("identity", c1).kind == "identity"
    assert io.parse_phi("perm:1,0,3,2", c1).perm == (1, 0, 3, 2)
    assert io.parse_phi("affine:1100", c1).shift == 0b0011
    for bad in ("perm:0,0,1,2", "affine:11", "rotate"):
        with pytest.raises(ParseError):
            io.parse_phi(bad, c1)


def test_report_examples():
    p = make_css(from_rows(["1111", "1100"]), from_rows(["1111"]))
    r = CodeReport("raw", p, css_params(p), csst_check(p.c1, p.c2))
    j = json.loads(report_json(r))
    assert j["params"]["d"] == 2 and j["params"]["certificates"]
    assert j["triorthogonal"] == "n/a"
    assert report_json(r) == report_json(CodeReport("raw", p, css_params(p), csst_check(p.c1, p.c2)))
    err = json.loads(error_json(PreconditionError("n1_odd", "css_a must have odd length")))
    assert err["violated"] == "n1_odd"
    with pytest.raises(ValueError):
        CodeReport("mystery", p, css_params(p), csst_check(p.c1, p.c2))


def test_cli_gf2(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("4 3\n1111\n1100\n0011\n")
    code, out = run("gf2", "rref", str(f))
    assert code == 0 and json.loads(out) == {"rank": 2, "pivots": [0, 2], "rows": ["1100", "0011"]}
    code, out = run("gf2", "kernel", str(f))
    assert json.loads(out)["dimension"] == 2
    f.write_text("4 2\n1111\n110\n")
    code, out = run("gf2", "rank", str(f))
    assert code == 2 and json.loads(out)["violated"] == "parse"


def test_cli_code():
    code, out = run("code", "classify", "7;11")
    j = json.loads(out)
    assert code == 0 and j["k"] == 6 and j["is_even"]
    code, out = run("code", "distance", "7;1101")
    assert json.loads(out)["value"] == 3
    code, out = run("code", "distance", "--dual", "7;1101")
    assert json.loads(out)["value"] == 4
    code, out = run("code", "classify", "7;111")
    assert code == 2


def test_cli_css_and_csst(p41, tmp_path):
    code, out = run("css", "--pair", p41)
    j = json.loads(out)
    assert code == 0 and j["params"]["d"] == 2 and j["construction"] == "raw"
    code, out = run("csst", "check", "--pair", p41)
    assert code == 0 and json.loads(out)["schur_ok"] is True
    code, out = run("csst", "check", "--c1", "7;1101", "--c2", "7;10111")
    assert code == 1 and json.loads(out)["schur_ok"] is False
    dst = tmp_path / "n.json"
    code, out = run("csst", "nphi", "--pair", p41, "--out", str(dst))
    assert code == 0 and json.loads(out)["params"]["n"] == 8 and io.load_pair(str(dst)).n == 8
    code, out = run("csst", "nphi", "--pair", p41, "--phi", "affine:1000")
    assert code == 2 and json.loads(out)["violated"] == "phi_triple_parity"
    code, out = run("csst", "iterate", "--pair", p41, "--levels", "2")
    assert code == 0 and json.loads(out)["params"]["n"] == 16
    code, out = run("csst", "iterate", "--pair", p41, "--levels", "13")
    assert code == 3
    code, out = run("csst", "hn", "--pair", p41)
    assert code == 0 and json.loads(out)["sparsity"]["matches"]


def test_cli_trio(tmp_path):
    code, out = run("trio", "check", "--pair", "qrm15")
    assert code == 0 and json.loads(out)["ok"]
    odd = tmp_path / "odd.txt"
    odd.write_text("15 1\n" + "1" * 15 + "\n")
    code, out = run("trio", "extract", "--pair", "qrm15", "--odd", str(odd))
    assert code == 0 and json.loads(out)["triorthogonal"]["ok"]
    ing = tmp_path / "a.json"
    code, out = run("trio", "ingredient", "--name", "sd18", "--index", "9", "--out", str(ing))
    assert code == 0 and json.loads(out)["params"]["n"] == 17
    code, out = run("--method", "information_set", "trio", "double", "--a", str(ing), "--b", "qrm15")
    j = json.loads(out)
    assert code == 0 and j["construction"] == "double"
    assert (j["params"]["n"], j["params"]["k"], j["params"]["d"]) == (49, 1, 5)
    code, out = run("trio", "ingredient", "--name", "nope", "--index", "0")
    assert code == 2
    code, out = run("trio", "double", "--a", "qrm15.json", "--b", "qrm15")
    assert code == 2


def test_cli_phase(p41):
    code, out = run("phase", "--pair", "qrm15", "--l", "3")
    j = json.loads(out)
    assert code == 0 and j["entries"] == {"0": "0/8", "1": "7/8"} and j["order"] == 8
    assert j["profiles"]["1"] == {"7": 16}
    code, out = run("ccz", "--pair", p41)
    assert code == 0 and "preserved" in json.loads(out)
    code, out = run("oblivious", "--pair", "qrm15", "--lmax", "3")
    assert code == 1 and json.loads(out)["oblivious"] is False


def test_cli_search_and_fixture(tmp_path):
    code, out = run("search", "--n", "7", "--target", "14,3,3")
    j = json.loads(out)
    assert code == 0 and j["count"] >= 1
    assert all(r["params"]["z_degenerate"] is True for r in j["reports"])
    code, out = run("search", "--n", "8")
    assert code == 2 and json.loads(out)["violated"] == "n_odd_range"
    code, out = run("search", "--n", "7", "--target", "14,7,9")
    assert code == 1
    f = tmp_path / "q.json"
    code, out = run("fixture", "--out", str(f))
    assert code == 0 and io.load_pair(str(f)).c1 == quantum_reed_muller_15().c1


def test_cli_determinism(p41):
    first = run("--seed", "3", "--method", "information_set", "css", "--pair", "qrm15")
    second = run("--seed", "3", "--method", "information_set", "css", "--pair", "qrm15")
    assert first == second
    assert run("search", "--n", "9") == run("search", "--n", "9")


def test_cli_usage_errors(p41):
    res = CliRunner().invoke(main, ["css"])
    assert res.exit_code == 2
    res = CliRunner().invoke(main, ["css", "--pair", p41, "--c1", "7;11"])
    assert res.exit_code == 2
    code, out = run("css", "--pair", "/nonexistent.json")
    assert code == 2 and json.loads(out)["violated"] == "parse"
