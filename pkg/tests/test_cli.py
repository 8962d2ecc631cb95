"""Command-line behaviour: outputs, determinism, exit codes."""

import json

from torbun.cli import main
from torbun.problem import parse_problem

from conftest import FIXTURES

F1_BUNDLE = str(FIXTURES / "f1_bundle.json")
F1_WEIGHTS = str(FIXTURES / "f1_weights.json")
F1_PIECEWISE = str(FIXTURES / "f1_piecewise.json")
P1P1_DIAGONAL = str(FIXTURES / "p1p1_diagonal.json")
P1P1_SKEW = str(FIXTURES / "p1p1_skew.json")
SINGULAR = str(FIXTURES / "singular_fan.json")
SQUARE = str(FIXTURES / "cone_over_square.json")
POINT = str(FIXTURES / "point_fan.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


# ---------------------------------------------------------------------------
# check-fan


def test_check_fan_f1(capsys):
    code, doc = run_json(capsys, "check-fan", F1_BUNDLE)
    assert code == 0
    assert doc["outputs"]["complete"] is True
    assert doc["outputs"]["smooth"] is True


def test_check_fan_singular(capsys):
    code, doc = run_json(capsys, "check-fan", SINGULAR)
    assert code == 0
    assert doc["outputs"]["smooth"] is False
    assert doc["outputs"]["multiplicities"]["[0,1]"] == 2


def test_check_fan_point(capsys):
    code, doc = run_json(capsys, "check-fan", POINT)
    assert code == 0
    assert doc["outputs"]["complete"] is True


def test_check_fan_square_cone(capsys):
    code, doc = run_json(capsys, "check-fan", SQUARE)
    assert code == 0
    assert doc["outputs"]["complete"] is False
    assert doc["outputs"]["simplicial"] is False


# ---------------------------------------------------------------------------
# presentation


def test_presentation_divisor_relations(capsys):
    code, doc = run_json(capsys, "presentation", F1_BUNDLE)
    assert code == 0
    relations = [r["relation"] for r in doc["outputs"]["relations"]]
    assert "D1 + D2 - D4 = p*a1" in relations
    assert "D2 + D3 - D4 = p*a2" in relations


def test_presentation_equivariant(capsys):
    code, doc = run_json(capsys, "presentation", F1_BUNDLE, "--equivariant")
    assert code == 0
    relations = [r["relation"] for r in doc["outputs"]["relations"]]
    assert "D1 + D2 - D4 = p*a1 + x1" in relations
    assert "D2 + D3 - D4 = p*a2 + x2" in relations


# ---------------------------------------------------------------------------
# balancing and products


def test_check_balancing_ok(capsys):
    code, doc = run_json(capsys, "check-balancing", F1_WEIGHTS)
    assert code == 0
    assert doc["outputs"]["weight_1"]["balanced"] is True
    assert doc["outputs"]["weight_2"]["balanced"] is True


def test_check_balancing_violation(capsys, tmp_path):
    data = json.loads(open(F1_WEIGHTS).read())
    data["weights"] = [
        {"codim": 1, "values": {"[0]": "1", "[1]": "-1", "[0,1]": "a2"}}
    ]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(data))
    code, doc = run_json(capsys, "check-balancing", str(path))
    assert code == 3
    assert doc["outputs"]["weight_1"]["balanced"] is False
    assert doc["outputs"]["weight_1"]["violations"]


def test_mw_product_output(capsys):
    code, doc = run_json(capsys, "mw-product", F1_WEIGHTS)
    assert code == 0
    values = doc["outputs"]["values"]
    assert values["[]"] == "1"
    assert values["[0]"] == "a1 - a2"
    assert values["[1]"] == "a2"
    assert values["[0,1]"] == "a1*a2 - a2^2"
    assert doc["diagnostics"]["v"] == [2, 1]


def test_mw_product_explicit_vector_and_checks(capsys):
    code, doc = run_json(
        capsys, "mw-product", F1_WEIGHTS, "--v", "3,1", "--cross-check", "--oracle"
    )
    assert code == 0
    assert doc["diagnostics"]["cross_check"] == "match"
    assert doc["diagnostics"]["oracle"] == "match"


def test_mw_product_nongeneric_vector_exits_4(capsys):
    code, doc = run_json(capsys, "mw-product", F1_WEIGHTS, "--v", "1,1")
    assert code == 4
    assert doc["error"]["kind"] == "genericity"


def test_mw_product_needs_two_weights(capsys):
    code = main(["mw-product", F1_BUNDLE])
    assert code == 2


# ---------------------------------------------------------------------------
# equivariant commands


def test_equiv_mult_command(capsys):
    code, doc = run_json(
        capsys, "equiv-mult", F1_PIECEWISE, "--sigma", "[0,1]", "--tau", "[]"
    )
    assert code == 0
    assert doc["outputs"]["value"] == "1 / (x2 * (x1 - x2))"
    assert doc["outputs"]["degree"] == -2


def test_equiv_mult_singular(capsys):
    code, doc = run_json(
        capsys, "equiv-mult", SINGULAR, "--sigma", "[0,1]", "--tau", "[]"
    )
    assert code == 0
    assert doc["outputs"]["value"] == "2 / (x2 * (2*x1 - x2))"


def test_residue_command(capsys):
    code, doc = run_json(capsys, "residue", F1_PIECEWISE)
    assert code == 0
    assert doc["outputs"]["[]"] == "-1"
    assert doc["outputs"]["[1]"] == "-x1 - x2"
    assert doc["outputs"]["[1,2]"] == "x1^2"


def test_residue_single_cone(capsys):
    code, doc = run_json(capsys, "residue", F1_PIECEWISE, "--tau", "[1]")
    assert code == 0
    assert doc["outputs"] == {"[1]": "-x1 - x2"}


def test_pp_to_mw_command(capsys):
    code, doc = run_json(capsys, "pp-to-mw", F1_PIECEWISE)
    assert code == 0
    values = doc["outputs"]["values"]
    assert values["[]"] == "-1"
    assert values["[1]"] == "-a1 - a2"
    assert values["[0,1]"] == "a2^2"
    assert values["[1,2]"] == "a1^2"


# ---------------------------------------------------------------------------
# subbundle


def test_subbundle_diagonal(capsys):
    code, doc = run_json(capsys, "subbundle", P1P1_DIAGONAL)
    assert code == 0
    assert doc["outputs"] == {"[0]": 1, "[3]": 1}


def test_subbundle_skew(capsys):
    code, doc = run_json(capsys, "subbundle", P1P1_SKEW)
    assert code == 0
    assert doc["outputs"] == {"[0]": 2, "[3]": 1}


def test_subbundle_searches_when_no_vector(capsys, tmp_path):
    data = json.loads(open(P1P1_DIAGONAL).read())
    del data["displacement"]
    path = tmp_path / "nodisp.json"
    path.write_text(json.dumps(data))
    code, doc = run_json(capsys, "subbundle", str(path))
    assert code == 0
    assert doc["diagnostics"]["search_attempts"] >= 1
    assert sorted(doc["outputs"].values()) == [1, 1]


# ---------------------------------------------------------------------------
# determinism, validation, round trips


def test_identical_runs_are_byte_identical(capsys):
    _, out1 = run(capsys, "mw-product", F1_WEIGHTS, "--format", "json")
    _, out2 = run(capsys, "mw-product", F1_WEIGHTS, "--format", "json")
    assert out1 == out2
    _, t1 = run(capsys, "presentation", F1_BUNDLE)
    _, t2 = run(capsys, "presentation", F1_BUNDLE)
    assert t1 == t2


def test_env_seed_override(capsys, monkeypatch, tmp_path):
    data = json.loads(open(F1_WEIGHTS).read())
    del data["displacement"]
    path = tmp_path / "noseed.json"
    path.write_text(json.dumps(data))
    code, doc = run_json(capsys, "mw-product", str(path), "--seed", "5")
    monkeypatch.setenv("TORBUN_SEED", "5")
    code2, doc2 = run_json(capsys, "mw-product", str(path), "--seed", "123")
    assert code == code2 == 0
    assert doc["diagnostics"]["v"] == doc2["diagnostics"]["v"]


def test_parse_error_exit_2(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["check-fan", str(path)]) == 2
    err = capsys.readouterr().err
    assert "line" in err


def test_missing_section_exit_2(capsys):
    assert main(["check-balancing", F1_BUNDLE]) == 2
    assert main(["subbundle", F1_BUNDLE]) == 2
    assert main(["pp-to-mw", F1_BUNDLE]) == 2


def test_dual_to_values_mismatch_exit_2(capsys, tmp_path):
    data = json.loads(open(F1_WEIGHTS).read())
    data["weights"][0]["values"]["[1]"] = "2"
    path = tmp_path / "mismatch.json"
    path.write_text(json.dumps(data))
    assert main(["check-balancing", str(path)]) == 2


def test_round_trip_is_idempotent():
    text = open(F1_WEIGHTS).read()
    problem = parse_problem(text)
    canon = problem.canonical_json()
    again = parse_problem(canon).canonical_json()
    assert canon == again
