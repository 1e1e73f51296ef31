import json

import pytest

from vallab.cli.expressions import ExpressionParser, parse_polynomial, parse_series, tokenize
from vallab.core.errors import ParseError
from vallab.main import build_parser, main
from vallab.modules.construction.witness import WConstructionParams


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("VALLAB_CONFIG", "VALLAB_PREC", "VALLAB_FORMAT", "VALLAB_OUTPUT"):
        monkeypatch.delenv(name, raising=False)


# ============================================
# EXPRESIONES
# ============================================

def test_tokenize_positions():
    tokens = tokenize("t^(1/3) + w")
    assert [tok.text for tok in tokens] == ["t", "^", "(", "1", "/", "3", ")", "+", "w", ""]
    assert tokens[-2].column == 11
    assert tokens[-1].kind == "end"


def test_parse_errors_carry_token_index(params23):
    with pytest.raises(ParseError) as excinfo:
        parse_series("w +", params23)
    assert excinfo.value.token == 3
    assert "unexpected end of input" in excinfo.value.message

    with pytest.raises(ParseError) as excinfo:
        parse_series("w + y", params23)
    assert excinfo.value.token == 3

    with pytest.raises(ParseError):
        parse_series("W + 1", params23)
    with pytest.raises(ParseError):
        parse_series("g", params23)


def test_parse_series_values(params23):
    inverse = parse_series("inv(w)", params23)
    assert inverse.valuation() == -parse_series("w", params23).valuation()
    assert parse_series("t^(0/1)", params23).support() == [0]
    assert parse_series("t + t", params23).is_zero()
    assert parse_series("frob(proot(t^2))", params23) == parse_series("t^2", params23)
    s = parse_series("s", params23)
    assert s.valuation() * 2 == parse_series("w", params23).valuation()


def test_x_is_rejected_below_its_perturbation(params23, capsys):
    with pytest.raises(ParseError) as excinfo:
        parse_series("s + x", params23)
    assert excinfo.value.token == 3
    assert "t^(3/4)" in excinfo.value.message
    assert main(["series", "x"]) == 2


def test_parse_polynomial(params23):
    f = parse_polynomial("W^2 + t*W + 1", params23)
    assert f.degree == 2
    assert f.coefficient(1).support() == [1]
    with pytest.raises(ParseError):
        ExpressionParser(params23).parse("W")


def test_g_needs_extension_field():
    params = WConstructionParams(p=2, q=3, m=2)
    value = parse_series("g*t", params)
    assert value.support() == [1]


# ============================================
# COMANDOS
# ============================================

def test_parser_accepts_flags_after_subcommand():
    args = build_parser().parse_args(["series", "w", "--p", "3", "--q", "2"])
    assert (args.p, args.q, args.command) == (3, 2, "series")


def test_series_text_output(capsys):
    assert main(["series", "t^(0/1)"]) == 0
    assert capsys.readouterr().out.strip() == "1, v = 0"


def test_series_json_output(capsys):
    assert main(["series", "inv(w)", "--p", "2", "--q", "3", "--depth", "5", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["valuation"] == "-2/3"
    assert document["terms"][0] == ["-2/3", "1"]


def test_exit_codes(capsys):
    assert main(["stabilize", "--f", "0"]) == 2
    assert main(["series", "w", "--p", "3", "--q", "3"]) == 2
    assert main(["series", "w +"]) == 2
    assert main(["stabilize", "--f", "W + w"]) == 3


def test_stabilize_command(capsys):
    assert main(["stabilize", "--f", "W + t^(2/3)", "--json"]) == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert["l0"] == 2
    assert cert["value"] == "8/9"


def test_as_command(capsys):
    assert main(["as", "--b", "t^(-2)", "--json"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["n"] == 1
    assert document["verdict"]["verdict"] == "not-immediate"
    assert document["verdict"]["witness"] == "-1"


def test_defect_tower_command(capsys):
    assert main(["defect", "tower", "--level", "K'|K", "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert (report["e"], report["f"], report["d"]) == (2, 1, 1)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "series.json"
    assert main(["series", "t", "--json", "--output", str(target)]) == 0
    assert json.loads(target.read_text())["valuation"] == "1"


def test_experiment_is_deterministic(capsys):
    argv = ["experiment", "paper", "--seed", "7", "--depth", "4", "--corpus-size", "5", "--as-corpus-size", "10"]
    first_code = main(argv)
    first = capsys.readouterr().out
    second_code = main(argv)
    second = capsys.readouterr().out
    assert first_code == second_code == 0
    assert first == second
    document = json.loads(first)
    assert document["schema"] == "1"
    assert document["seed"] == 7
    assert [row["label"] for row in document["tower"]] == ["K'|K", "L|K'", "L|K"]
    assert document["probe"]["samples"] == 5
    assert any(row["outcome"] == "inconclusive" for row in document["pth_powers"])


def test_experiment_for_p3_q2(capsys):
    argv = ["experiment", "paper", "--p", "3", "--q", "2", "--seed", "1", "--corpus-size", "20", "--as-corpus-size", "20"]
    assert main(argv) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["config"]["p"] == 3
    assert document["invariants_ok"]
    tower = {row["label"]: row for row in document["tower"]}
    assert (tower["K'|K"]["e"], tower["K'|K"]["f"], tower["K'|K"]["d"]) == (3, 1, 1)
    assert (tower["L|K'"]["e"], tower["L|K'"]["f"], tower["L|K'"]["d"]) == (1, 1, 3)
    assert (tower["L|K"]["degree"], tower["L|K"]["d"]) == (9, 3)
    assert all(row["ostrowski_ok"] for row in document["tower"])
    assert [row["in_p_gamma"] for row in document["support_profile"]] == [False, True, False, True, False]
    assert document["probe"]["samples"] == 20
    assert document["probe"]["all_in_group"]
    assert document["probe"]["within_bound"]
