import json

import pytest

from crembed.catalog import catalog_get
from crembed.cli import RunConfig, main, run
from crembed.exact_algebra import Polynomial


@pytest.fixture
def nonintegrable(tmp_path):
    data = {
        "dim": 5,
        "brackets": [{"i": 1, "j": 3, "coeffs": {"5": "1"}}],
        "horizontal": [1, 2, 3, 4],
        "J": [["0", "-1", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "0", "-1"], ["0", "0", "1", "0"]],
        "complement": [5],
    }
    path = tmp_path / "nonint.json"
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def horizontal_p(tmp_path):
    data = catalog_get("dim6_omega2").cr.to_json()
    data["subgroup_p"] = [2, 3, 4, 5]
    path = tmp_path / "hp.json"
    path.write_text(json.dumps(data))
    return str(path)


def call(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("command", ["check", "embed", "product", "vfields", "quotient"])
def test_catalog_commands_succeed(capsys, command):
    code, out, _ = call(capsys, command, "--catalog", "heisenberg3")
    assert code == 0 and out


def test_embed_latex_heisenberg(capsys):
    code, out, _ = call(capsys, "embed", "--catalog", "heisenberg3", "--format", "latex")
    assert code == 0
    assert r"\frac{1}{2}\left(x_{1} + i x_{2}\right)" in out
    assert r"x_{3} - \frac{i}{4}\left(x_{1}^{2} + x_{2}^{2}\right)" in out


def test_quotient_dim6(capsys):
    code, out, _ = call(capsys, "quotient", "--catalog", "dim6_omega2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["components"]) == 2
    rel = Polynomial.from_json(data["hypersurface"]["relation"])
    assert rel == catalog_get("dim6_omega2").expected["hypersurface"].value[0]
    code, out, _ = call(capsys, "quotient", "--catalog", "dim6_omega2", "--format", "latex")
    assert r"\operatorname{Im} w = -\frac{1}{4}\left(x_{1}^{2} + x_{2}^{2}\right)^{2}" in out


def test_json_round_trip(capsys):
    _, out, _ = call(capsys, "embed", "--catalog", "dim8_noncommutative_h01", "--format", "json")
    comps = [Polynomial.from_json(c) for c in json.loads(out)["components"]]
    assert comps == catalog_get("dim8_noncommutative_h01").expected["embedding"].value


def test_deterministic_output(capsys):
    first = call(capsys, "product", "--catalog", "free_2_3", "--format", "json")
    second = call(capsys, "product", "--catalog", "free_2_3", "--format", "json")
    assert first == second


def test_catalog_listing(capsys):
    code, out, _ = call(capsys, "catalog")
    assert code == 0 and out.count("\n") == 4
    code, out, _ = call(capsys, "catalog", "--catalog", "free_2_3", "--format", "json")
    assert json.loads(out)["name"] == "free_2_3"


def test_nonintegrable_exit_2(capsys, nonintegrable):
    code, out, _ = call(capsys, "check", nonintegrable)
    assert code == 2 and "integrable: False" in out
    code, out, err = call(capsys, "embed", nonintegrable)
    assert code == 2 and out == "" and err


def test_horizontal_subgroup_exit_2(capsys, horizontal_p):
    code, out, _ = call(capsys, "quotient", horizontal_p)
    assert code == 2 and "subgroup rejected" in out


def test_verification_failure_exit_4(capsys):
    # the subgroup chart group must come first for the slice to project cleanly
    code, _, err = call(capsys, "quotient", "--catalog", "dim6_omega2", "--chart", "{1,2},{3,4,5},{6}")
    assert code == 4 and "exit code 4" in err


def test_invalid_algebra_exit_1(capsys, tmp_path):
    # [X1,X2]=X3, [X1,X3]=X4, [X2,X3]=X1 breaks nilpotency
    data = {"dim": 4, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}},
                                   {"i": 2, "j": 3, "coeffs": {"1": "1"}}]}
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(data))
    code, _, _ = call(capsys, "check", str(path))
    assert code == 1


def test_schema_error_has_no_partial_output(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dim": 3, "brackets": [{"i": 1}]')
    code, out, err = call(capsys, "check", str(path))
    assert code == 5 and out == "" and "not valid JSON" in err
    path.write_text(json.dumps({"dim": 3, "brackets": [{"i": 1}], "horizontal": [1, 2], "J": [], "complement": [3]}))
    code, out, err = call(capsys, "check", str(path))
    assert code == 5 and out == ""


def test_input_source_rules(capsys, tmp_path):
    assert call(capsys, "embed")[0] == 5
    assert call(capsys, "embed", "x.json", "--catalog", "heisenberg3")[0] == 5
    assert call(capsys, "embed", "--catalog", "nope")[0] == 5
    assert call(capsys, "embed", str(tmp_path / "missing.json"))[0] == 5


def test_run_returns_document():
    code, doc = run(RunConfig("embed", catalog="heisenberg3"))
    assert code == 0 and "1/2*x1 + 1/2*i*x2" in doc


def test_bad_chart_is_schema_error(capsys):
    assert call(capsys, "embed", "--catalog", "heisenberg3", "--chart", "{1,2}")[0] == 5
