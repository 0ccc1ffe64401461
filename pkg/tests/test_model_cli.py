import subprocess
import sys

import pytest

from hopfpi import zoo
from hopfpi.cli import main
from hopfpi.errors import AssociativityError, ModelParseError, ProductRuleViolation
from hopfpi.model import parse, serialize, validate


@pytest.mark.parametrize("name", zoo.NAMES)
def test_zoo_models_validate_and_round_trip(name):
    model = zoo.load(name)
    validate(model)
    text = serialize(model)
    back = parse(text)
    assert back.algebra == model.algebra
    assert back.generators == model.generators
    assert serialize(back) == text


def test_m2_round_trip_text():
    text = serialize(zoo.load("m2"))
    assert text.startswith("hopfpi-model 1\nname m2\ndim 4\nbasis e11 e12 e21 e22\nunit 1 0 0 1\n")
    assert "mul 0 1 1 1" in text


GOOD = """hopfpi-model 1
# Q + Q with the swap
name swap
dim 2
unit 1 1
mul 0 0 0 1
mul 1 1 1 1
operator s automorphism
row 0 1
row 1 0
end
"""


def test_parse_and_generalized_rule():
    model = parse(GOOD)
    assert model.action().m == 2
    gen = GOOD.replace("automorphism", "generalized").replace("end", "quad 0 1 | 0 1 | 0 0 | 0 0\nend")
    assert parse(gen).generators[0].rule.kind == "generalized"
    assert parse(serialize(parse(gen))) == parse(gen)


@pytest.mark.parametrize("text,line", [
    ("hopfpi-model 2\n", 1),
    ("hopfpi-model 1\ndim 2\nmul 0 0 5 1\n", 3),
    ("hopfpi-model 1\ndim 2\nmul 0 0 0 1/0\n", 3),
    ("hopfpi-model 1\ndim 2\nmul 0 0 0 x\n", 3),
    ("hopfpi-model 1\nmul 0 0 0 1\n", 2),
    ("hopfpi-model 1\ndim 2\noperator s automorphism\nrow 1 0\nend\n", 5),
    ("hopfpi-model 1\ndim 1\noperator s automorphism\nrow 1\n", 4),
    ("hopfpi-model 1\ndim 1\nfrobnicate\n", 3),
])
def test_parse_errors_have_positions(text, line):
    with pytest.raises(ModelParseError) as err:
        parse(text)
    assert err.value.line == line and err.value.column is not None


def test_parse_error_column():
    with pytest.raises(ModelParseError) as err:
        parse("hopfpi-model 1\ndim 2\nmul 0 0 0 x\n")
    assert err.value.column == 11


def test_non_associative_file():
    text = "hopfpi-model 1\ndim 2\nmul 0 0 1 1\nmul 1 0 0 1\n"
    with pytest.raises(AssociativityError) as err:
        parse(text)
    assert "(0, 0, 0)" in str(err.value)


def test_non_multiplicative_automorphism():
    text = GOOD.replace("row 0 1\nrow 1 0", "row 1 1\nrow 0 1")
    with pytest.raises(ProductRuleViolation):
        parse(text)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_examples(capsys):
    assert run(capsys, "codim", "zoo:point", "--n", "5")[:2] == (0, "1\n")
    assert run(capsys, "codim", "zoo:nil3", "--n", "3")[:2] == (0, "0\n")
    code, out, _ = run(capsys, "exponent", "zoo:bahturin-m2")
    assert code == 0 and out.splitlines()[0] == "d = 4"
    code, out, _ = run(capsys, "codim", "zoo:ut2", "--n", "4", "--method", "both")
    assert out == "18\n"


def test_cli_reports(capsys, tmp_path):
    code, out, _ = run(capsys, "radical", "zoo:bahturin-m2")
    assert out.splitlines()[:3] == ["dim J = 4", "p = 2", "H-invariant: yes"]
    code, out, _ = run(capsys, "cochar", "zoo:ut2", "--n", "2")
    assert out == "lambda m f\n(2) 1 1\n(1,1) 1 1\ncolength = 2\nc = 2\n"
    code, out, _ = run(capsys, "vanishing", "zoo:m2", "--n", "4")
    assert "no constrained partitions" in out and code == 0
    code, out, _ = run(capsys, "decompose", "zoo:qq-swap")
    assert "H-component B1: simple components {0,1}, dim 2" in out
    target = tmp_path / "growth.csv"
    code, out, _ = run(capsys, "growth", "zoo:ut2", "--max-n", "3", "--out", str(target))
    assert code == 0 and target.read_text().startswith("n,c,colength,ratio,root,d,flags\n")
    assert "finite-window" in out


def test_cli_model_file(capsys, tmp_path):
    path = tmp_path / "swap.model"
    path.write_text(GOOD)
    code, out, _ = run(capsys, "check", str(path))
    assert code == 0 and out.endswith("check: ok\n")
    code, out, _ = run(capsys, "export", str(path))
    assert parse(out) == parse(GOOD)


@pytest.mark.parametrize("name", zoo.NAMES)
def test_every_zoo_model_passes_check(capsys, name):
    assert run(capsys, "check", f"zoo:{name}")[0] == 0


def test_cli_error_codes(capsys, tmp_path):
    code, _, err = run(capsys, "codim", "zoo:m3", "--n", "9")
    assert code == 8 and err.startswith("error: SIZE_LIMIT:")
    bad = tmp_path / "bad.model"
    bad.write_text("hopfpi-model 1\ndim 2\nmul 0 0 0 x\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 3 and err.startswith("error: PARSE_ERROR: line 3, column 11")
    bad.write_text("hopfpi-model 1\ndim 2\nmul 0 0 1 1\nmul 1 0 0 1\n")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 4 and err.startswith("error: VALIDATION_ERROR:")
    sqrt2 = tmp_path / "sqrt2.model"
    sqrt2.write_text("hopfpi-model 1\ndim 2\nunit 1 0\nmul 0 0 0 1\nmul 0 1 1 1\nmul 1 0 1 1\nmul 1 1 0 2\n")
    code, _, err = run(capsys, "exponent", str(sqrt2))
    assert code == 5 and err.startswith("error: SPLIT_FAILURE:")
    code, _, err = run(capsys, "check", "zoo:nosuch")
    assert code == 4


def test_cli_not_invariant_and_not_h_simple(capsys, tmp_path):
    path = tmp_path / "h.model"
    path.write_text("hopfpi-model 1\ndim 2\nmul 0 0 0 1\noperator h generalized\nrow 0 1\nrow 0 0\nend\n")
    code, _, err = run(capsys, "check", str(path))
    assert code == 7 and err.startswith("error: NOT_H_INVARIANT:")
    model = zoo.load("m2")
    A = zoo.direct_sum(model.algebra, model.algebra, "m2+m2")
    from hopfpi.action import AUTOMORPHISM, Generator
    from hopfpi.model import Model
    rows = [[0] * 8 for _ in range(8)]
    for k in range(4):
        rows[k][k] = rows[4 + k][k] = 1
    path.write_text(serialize(Model("copy", A, (Generator.make("c", rows, AUTOMORPHISM),))))
    code, _, err = run(capsys, "exponent", str(path))
    assert code == 6 and err.startswith("error: NOT_H_SIMPLE:")


def test_cli_output_is_byte_identical_across_runs_and_threads():
    cmd = [sys.executable, "-m", "hopfpi.cli", "cochar", "zoo:m2-transpose", "--n", "3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--threads", "2"], capture_output=True, check=True).stdout
    c = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b == c
