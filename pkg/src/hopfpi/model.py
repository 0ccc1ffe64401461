"""Model files: an algebra plus the generators of an action.

Grammar (line oriented, ``#`` starts a comment, blank lines ignored)::

    hopfpi-model 1
    name <token>
    dim <d>
    basis <label_0> ... <label_{d-1}>          optional, defaults e0 e1 ...
    unit <c_0> ... <c_{d-1}>                   optional
    mul <i> <j> <k> <c>                        e_i * e_j has coefficient c at e_k
    operator <name> <rule>                     rule: automorphism | antiautomorphism
    row <c> ... <c>                                  | derivation | generalized
    ...                                        exactly d rows, then for generalized
    quad <c ...> | <c ...> | <c ...> | <c ...>       any number of quad lines
    end

Indices are 0-based, scalars are integers or ``p/q``.  Operator rows follow
the convention ``M[i][j]`` = coefficient of e_i in h(e_j).  Generalized
coefficient vectors refer to the list [identity, operator_1, ..., operator_k]
in declaration order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .action import (Generator, HActionData, ProductRule, declared_operators, operator_algebra_basis,
                     verify_product_rule)
from .algebra import Algebra, find_associativity_violation
from .errors import AssociativityError, ModelParseError, ProductRuleViolation, ValidationError

HEADER = "hopfpi-model 1"
_SCALAR = re.compile(r"^-?\d+(/\d+)?$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Model:
    name: str
    algebra: Algebra
    generators: tuple[Generator, ...]

    def action(self) -> HActionData:
        return operator_algebra_basis(self.algebra, self.generators)


def scalar_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def validate(model: Model) -> None:
    """Associativity, declared unit and every generator's product rule."""
    A = model.algebra
    bad = find_associativity_violation(A)
    if bad is not None:
        raise AssociativityError(bad)
    declared = declared_operators(A, model.generators)
    for g in model.generators:
        pair = verify_product_rule(A, g.matrix, g.rule, declared)
        if pair is not None:
            raise ProductRuleViolation(g.name, g.rule.kind, pair)


# ------------------------------------------------------------------ writer

def serialize(model: Model) -> str:
    A = model.algebra
    lines = [HEADER, f"name {model.name}", f"dim {A.dim}", "basis " + " ".join(A.labels)]
    if A.unit is not None:
        lines.append("unit " + " ".join(scalar_text(c) for c in A.unit))
    for (i, j, k), c in sorted(A.structure_constants.items()):
        lines.append(f"mul {i} {j} {k} {scalar_text(c)}")
    for g in model.generators:
        lines.append(f"operator {g.name} {g.rule.kind}")
        for row in g.matrix:
            lines.append("row " + " ".join(scalar_text(c) for c in row))
        for quad in g.rule.quadruples:
            lines.append("quad " + " | ".join(" ".join(scalar_text(c) for c in h) for h in quad))
        lines.append("end")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ parser

class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        self.text = text
        self.tokens = []  # (column, token)
        for mt in re.finditer(r"\S+", text):
            self.tokens.append((mt.start() + 1, mt.group()))

    def error(self, message: str, index: int = 0) -> ModelParseError:
        col = self.tokens[index][0] if index < len(self.tokens) else len(self.text) + 1
        return ModelParseError(message, self.number, col)

    def scalar(self, index: int) -> Fraction:
        if index >= len(self.tokens):
            raise self.error("missing scalar", index)
        tok = self.tokens[index][1]
        if not _SCALAR.match(tok):
            raise self.error(f"bad scalar {tok!r}", index)
        if tok.endswith("/0"):
            raise self.error("zero denominator", index)
        return Fraction(tok)

    def integer(self, index: int) -> int:
        if index >= len(self.tokens):
            raise self.error("missing integer", index)
        tok = self.tokens[index][1]
        if not tok.isdigit():
            raise self.error(f"bad integer {tok!r}", index)
        return int(tok)

    def arity(self, count: int):
        if len(self.tokens) != count:
            raise self.error(f"expected {count - 1} argument(s)", min(count, len(self.tokens) - 1))


def parse(text: str, check: bool = True) -> Model:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            lines.append(_Line(number, body))
    if not lines or " ".join(t for _, t in lines[0].tokens) != HEADER:
        where = lines[0] if lines else _Line(1, "")
        raise where.error(f"first line must be {HEADER!r}")
    name, dim, labels, unit = "model", None, None, None
    products: dict = {}
    generators = []
    current = None
    for ln in lines[1:]:
        key = ln.tokens[0][1]
        if current is not None:
            gname, rule, rows, quads = current
            if key == "row":
                rows.append([ln.scalar(i) for i in range(1, len(ln.tokens))])
                if len(rows[-1]) != dim:
                    raise ln.error(f"row must have {dim} entries")
            elif key == "quad":
                if rule != "generalized":
                    raise ln.error("quad lines are only allowed for generalized rules")
                parts = ln.text.split(None, 1)[1].split("|") if len(ln.tokens) > 1 else []
                if len(parts) != 4:
                    raise ln.error("quad needs four '|'-separated vectors")
                quads.append(tuple(tuple(_scalar_list(ln, p)) for p in parts))
            elif key == "end":
                ln.arity(1)
                if len(rows) != dim:
                    raise ln.error(f"operator {gname} has {len(rows)} rows, expected {dim}")
                generators.append(Generator.make(gname, rows, ProductRule(rule, tuple(quads))))
                current = None
            else:
                raise ln.error(f"unexpected {key!r} inside operator block")
            continue
        if key == "name":
            ln.arity(2)
            name = ln.tokens[1][1]
        elif key == "dim":
            ln.arity(2)
            dim = ln.integer(1)
        elif key == "basis":
            labels = [t for _, t in ln.tokens[1:]]
        elif key in ("unit", "mul", "operator") and dim is None:
            raise ln.error("dim must be declared first")
        elif key == "unit":
            ln.arity(dim + 1)
            unit = [ln.scalar(i) for i in range(1, dim + 1)]
        elif key == "mul":
            ln.arity(5)
            i, j, k = ln.integer(1), ln.integer(2), ln.integer(3)
            for idx, v in ((1, i), (2, j), (3, k)):
                if v >= dim:
                    raise ln.error(f"index {v} out of range for dim {dim}", idx)
            products.setdefault((i, j), {})
            products[i, j][k] = products[i, j].get(k, 0) + ln.scalar(4)
        elif key == "operator":
            ln.arity(3)
            gname, rule = ln.tokens[1][1], ln.tokens[2][1]
            if not _NAME.match(gname) or gname == "id":
                raise ln.error(f"bad operator name {gname!r}", 1)
            if rule not in ("automorphism", "antiautomorphism", "derivation", "generalized"):
                raise ln.error(f"unknown rule {rule!r}", 2)
            current = (gname, rule, [], [])
        else:
            raise ln.error(f"unknown directive {key!r}")
    if current is not None:
        raise lines[-1].error(f"operator {current[0]} is missing 'end'")
    if dim is None:
        raise lines[0].error("missing dim")
    if labels is not None and len(labels) != dim:
        raise ValidationError(f"{len(labels)} basis labels for dim {dim}")
    A = Algebra(dim, products, labels=labels, unit=unit, name=name, check=False)
    model = Model(name=name, algebra=A, generators=tuple(generators))
    if check:
        validate(model)
        if unit is not None and not A._is_unit(A.unit):
            raise ValidationError("declared unit does not act as identity")
    return model


def _scalar_list(ln: _Line, part: str) -> list[Fraction]:
    out = []
    for tok in part.split():
        if not _SCALAR.match(tok) or tok.endswith("/0"):
            raise ln.error(f"bad scalar {tok!r} in quad")
        out.append(Fraction(tok))
    return out
