"""Generalized H-actions, represented by their image zeta(H) in End(A).

An operator is a square matrix ``M`` (tuple of rows) acting on coordinate
columns: ``M[i][j]`` is the coefficient of e_i in h(e_j).

A product rule says how h(ab) splits into products of images of a and b::

    h(ab) = sum_i (h'_i a)(h''_i b) + (h'''_i b)(h''''_i a)

Inside :class:`HActionData` every rule is stored bilinearly over the zeta
basis as ``{(s, t, swapped): coefficient}``; an unswapped key contributes
``c * (g_s a)(g_t b)``, a swapped key ``c * (g_s b)(g_t a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import Algebra, Quotient, SemisimpleDecomposition
from .errors import NotHInvariant, NotHSimple, ProductRuleViolation, ValidationError
from .linalg import (
    Subspace, Vector, frac, identity_matrix, matmul, matvec, rref, solve_in_span, vadd, vscale,
    zero_vector,
)

RULE_KINDS = ("automorphism", "antiautomorphism", "derivation", "unit", "generalized")


@dataclass(frozen=True)
class ProductRule:
    kind: str
    # generalized only: tuple of (h', h'', h''', h'''') coefficient vectors over
    # the declared operator list [identity, generator_1, ..., generator_k]
    quadruples: tuple = ()

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValidationError(f"unknown product rule {self.kind!r}")


AUTOMORPHISM = ProductRule("automorphism")
ANTIAUTOMORPHISM = ProductRule("antiautomorphism")
DERIVATION = ProductRule("derivation")
UNIT = ProductRule("unit")


def generalized(quadruples) -> ProductRule:
    return ProductRule("generalized", tuple(tuple(tuple(frac(x) for x in h) for h in q) for q in quadruples))


@dataclass(frozen=True)
class Generator:
    name: str
    matrix: tuple
    rule: ProductRule

    @classmethod
    def make(cls, name: str, matrix, rule: ProductRule) -> "Generator":
        return cls(name, tuple(tuple(frac(x) for x in row) for row in matrix), rule)


def _combine(coeffs, ops):
    d = len(ops[0])
    out = [[Fraction(0)] * d for _ in range(d)]
    for c, M in zip(coeffs, ops):
        if c:
            for i in range(d):
                for j in range(d):
                    out[i][j] += c * M[i][j]
    return tuple(tuple(r) for r in out)


def verify_product_rule(A: Algebra, op, rule: ProductRule, declared: Sequence | None = None):
    """First basis pair (i, j) where ``op`` breaks ``rule``, or None.

    ``declared`` lists the operators that generalized coefficient vectors
    refer to, identity first.
    """
    d = A.dim
    basis = [A.basis_vector(i) for i in range(d)]
    images = [matvec(op, b) for b in basis]
    terms = []
    if rule.kind == "generalized":
        if declared is None:
            raise ValidationError("generalized rule needs the declared operator list")
        for q in rule.quadruples:
            if any(len(h) != len(declared) for h in q):
                raise ValidationError("generalized rule vector length does not match declared operators")
            terms.append(tuple(_combine(h, declared) for h in q))
        term_images = [[tuple(matvec(M, b) for b in basis) for M in q] for q in terms]
    for i in range(d):
        for j in range(d):
            lhs = matvec(op, A.product_of_basis(i, j))
            if rule.kind == "automorphism":
                rhs = A.multiply(images[i], images[j])
            elif rule.kind == "antiautomorphism":
                rhs = A.multiply(images[j], images[i])
            elif rule.kind == "derivation":
                rhs = vadd(A.multiply(images[i], basis[j]), A.multiply(basis[i], images[j]))
            elif rule.kind == "unit":
                rhs = A.product_of_basis(i, j)
            else:
                rhs = zero_vector(d)
                for h1, h2, h3, h4 in term_images:
                    rhs = vadd(rhs, A.multiply(h1[i], h2[j]))
                    rhs = vadd(rhs, A.multiply(h3[j], h4[i]))
            if lhs != rhs:
                return (i, j)
    return None


def _flat(M) -> tuple:
    return tuple(x for row in M for x in row)


@dataclass
class HActionData:
    """Basis of zeta(H) = the unital operator algebra generated by the generators."""

    dim: int
    generators: tuple
    operators: tuple          # zeta basis, identity first
    words: tuple              # word of generator indices producing each basis operator
    names: tuple
    _pivots: tuple = field(repr=False, default=())
    _inverse: tuple = field(repr=False, default=())
    _rules: dict = field(repr=False, default_factory=dict)
    _compose: dict = field(repr=False, default_factory=dict)
    _base_rules: tuple = field(repr=False, default=())

    @property
    def m(self) -> int:
        return len(self.operators)

    def apply(self, j: int, v) -> Vector:
        return matvec(self.operators[j], v)

    def span(self) -> Subspace:
        return Subspace.span([_flat(M) for M in self.operators], self.dim * self.dim)

    def coords(self, M) -> Vector:
        """Coordinates of an operator in the zeta basis (must lie in the span)."""
        flat = _flat(M)
        x = [sum((a * flat[p] for a, p in zip(row, self._pivots) if a), Fraction(0))
             for row in self._inverse]
        recon = [Fraction(0)] * len(flat)
        for c, op in zip(x, self.operators):
            if c:
                for k, y in enumerate(_flat(op)):
                    if y:
                        recon[k] += c * y
        if tuple(recon) != flat:
            raise ValueError("operator is not in the span of the zeta basis")
        return tuple(x)

    def compose_coords(self, s: int, u: int) -> Vector:
        key = (s, u)
        if key not in self._compose:
            self._compose[key] = self.coords(matmul(self.operators[s], self.operators[u]))
        return self._compose[key]

    def is_closed(self) -> bool:
        try:
            for s in range(self.m):
                for u in range(self.m):
                    self.compose_coords(s, u)
        except ValueError:
            return False
        return True

    def rule(self, j: int) -> dict:
        """Product rule of basis operator j, bilinear over the zeta basis."""
        if j not in self._rules:
            word = self.words[j]
            if not word:
                self._rules[j] = {(0, 0, False): Fraction(1)}
            else:
                outer = self.rule(self.words.index(word[:-1]))
                self._rules[j] = compose_rules(self, outer, self._base_rules[word[-1]])
        return self._rules[j]

    def rebased(self, order: Sequence[int], scales: Sequence | None = None) -> "HActionData":
        """Same operator span with basis scales[i] * operators[order[i]]."""
        scales = [frac(c) for c in (scales or [1] * self.m)]
        ops = tuple(tuple(tuple(c * x for x in row) for row in self.operators[o])
                    for o, c in zip(order, scales))
        new = _finish(self.dim, self.generators, ops, tuple(self.words[o] for o in order),
                      tuple(self.names[o] for o in order))
        pos = {o: i for i, o in enumerate(order)}
        for i, (o, c) in enumerate(zip(order, scales)):
            rule = {}
            for (s, t, sw), v in self.rule(o).items():
                key = (pos[s], pos[t], sw)
                rule[key] = rule.get(key, 0) + c * v / (scales[pos[s]] * scales[pos[t]])
            new._rules[i] = {k: v for k, v in rule.items() if v}
        return new


def _sparse(v) -> list:
    return [(i, c) for i, c in enumerate(v) if c]


def compose_rules(act: HActionData, outer: dict, inner: dict) -> dict:
    """Rule of outer o inner from the rules of its factors."""
    out: dict = {}
    for (s, t, sw1), c1 in outer.items():
        for (u, v, sw2), c2 in inner.items():
            if sw1:
                left, right = act.compose_coords(s, v), act.compose_coords(t, u)
            else:
                left, right = act.compose_coords(s, u), act.compose_coords(t, v)
            sw = sw1 != sw2
            c = c1 * c2
            for a, x in _sparse(left):
                for b, y in _sparse(right):
                    key = (a, b, sw)
                    out[key] = out.get(key, 0) + c * x * y
    return {k: v for k, v in out.items() if v}


def _base_rule(act: HActionData, gen: Generator) -> dict:
    g = act.coords(gen.matrix)
    one = act.coords(identity_matrix(act.dim))
    rule: dict = {}

    def add(h1, h2, swapped, c=Fraction(1)):
        for a, x in _sparse(h1):
            for b, y in _sparse(h2):
                key = (a, b, swapped)
                rule[key] = rule.get(key, 0) + c * x * y

    if gen.rule.kind == "automorphism":
        add(g, g, False)
    elif gen.rule.kind == "antiautomorphism":
        add(g, g, True)
    elif gen.rule.kind == "derivation":
        add(g, one, False)
        add(one, g, False)
    elif gen.rule.kind == "unit":
        add(one, one, False)
    else:
        declared = [one] + [act.coords(G.matrix) for G in act.generators]

        def z(h):
            out = zero_vector(act.m)
            for c, vv in zip(h, declared):
                if c:
                    out = vadd(out, vscale(c, vv))
            return out

        for h1, h2, h3, h4 in gen.rule.quadruples:
            add(z(h1), z(h2), False)
            add(z(h3), z(h4), True)
    return {k: v for k, v in rule.items() if v}


def declared_operators(A: Algebra, generators) -> list:
    return [identity_matrix(A.dim)] + [g.matrix for g in generators]


def _finish(dim, generators, ops, words, names) -> HActionData:
    flat = [_flat(M) for M in ops]
    # coordinates where the basis is invertible: pivots of the transpose
    _, pivots = rref(flat, dim * dim)
    # pivots index columns of the flattened operators; invert the square block
    block = [[f[p] for f in flat] for p in pivots]
    inv = _invert(block)
    act = HActionData(dim=dim, generators=tuple(generators), operators=tuple(ops),
                      words=tuple(words), names=tuple(names), _pivots=tuple(pivots),
                      _inverse=inv)
    act._base_rules = tuple(_base_rule(act, g) for g in generators)
    return act


def _invert(M):
    n = len(M)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(row[n:]) for row in R)


def word_name(word, generators) -> str:
    return ".".join(generators[g].name for g in word) if word else "id"


def operator_algebra_basis(A: Algebra, generators: Sequence[Generator]) -> HActionData:
    """Basis of the unital operator algebra generated, by length-then-lex words.

    Every generator's rule is verified first.
    """
    generators = tuple(generators)
    declared = declared_operators(A, generators)
    for g in generators:
        if len(g.matrix) != A.dim or any(len(r) != A.dim for r in g.matrix):
            raise ValidationError(f"operator {g.name!r} is not {A.dim}x{A.dim}")
        bad = verify_product_rule(A, g.matrix, g.rule, declared)
        if bad is not None:
            raise ProductRuleViolation(g.name, g.rule.kind, bad)
    ident = identity_matrix(A.dim)
    ops, words = [ident], [()]
    span = Subspace.span([_flat(ident)], A.dim * A.dim)
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            for gi, g in enumerate(generators):
                M = matmul(ops[idx], g.matrix)
                if not span.contains(_flat(M)):
                    span = span + Subspace.span([_flat(M)], A.dim * A.dim)
                    ops.append(M)
                    words.append(words[idx] + (gi,))
                    nxt.append(len(ops) - 1)
        frontier = nxt
    names = [word_name(w, generators) for w in words]
    return _finish(A.dim, generators, ops, words, names)


def trivial_action(A: Algebra) -> HActionData:
    return operator_algebra_basis(A, ())


def verify_zeta_rule(A: Algebra, act: HActionData, j: int):
    """First basis pair where the stored rule of zeta basis element j fails, or None."""
    rule = act.rule(j)
    basis = [A.basis_vector(i) for i in range(A.dim)]
    img = [[act.apply(s, b) for b in basis] for s in range(act.m)]
    for a in range(A.dim):
        for b in range(A.dim):
            lhs = act.apply(j, A.product_of_basis(a, b))
            rhs = zero_vector(A.dim)
            for (s, t, sw), c in rule.items():
                term = A.multiply(img[s][b], img[t][a]) if sw else A.multiply(img[s][a], img[t][b])
                rhs = vadd(rhs, vscale(c, term))
            if lhs != rhs:
                return (a, b)
    return None


def is_h_invariant(W: Subspace, act: HActionData) -> bool:
    return all(W.contains(act.apply(j, w)) for j in range(act.m) for w in W.basis)


def induced_quotient_action(A: Algebra, act: HActionData, Q: Quotient) -> HActionData:
    """The action descended to A/J; requires J to be invariant."""
    if not is_h_invariant(Q.ideal, act):
        raise NotHInvariant("the ideal is not invariant under the action")
    S = Q.algebra
    gens = []
    for g in act.generators:
        cols = [Q.project(matvec(g.matrix, Q.lift(S.basis_vector(b)))) for b in range(S.dim)]
        M = tuple(tuple(col[a] for col in cols) for a in range(S.dim))
        gens.append(Generator(g.name, M, g.rule))
    return operator_algebra_basis(S, gens)


@dataclass(frozen=True)
class HComponent:
    """An H-simple ideal of A/J: a union of simple components."""

    component_indices: tuple[int, ...]
    subspace: Subspace

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _ideal_closure(S: Algebra, act: HActionData, W: Subspace) -> Subspace:
    basis = [S.basis_vector(i) for i in range(S.dim)]
    while True:
        new = list(W.basis)
        for w in W.basis:
            new.extend(act.apply(j, w) for j in range(act.m))
            new.extend(S.multiply(b, w) for b in basis)
            new.extend(S.multiply(w, b) for b in basis)
        grown = Subspace.span(new, S.dim)
        if grown == W:
            return W
        W = grown


def h_simple_grouping(S: Algebra, dec: SemisimpleDecomposition, act: HActionData) -> list[HComponent]:
    """Group simple components into H-simple ideals B_1 + ... + B_q."""
    comps = dec.components
    parent = list(range(len(comps)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, ci in enumerate(comps):
        for j_op in range(act.m):
            for b in ci.subspace.basis:
                img = act.apply(j_op, b)
                for j, cj in enumerate(comps):
                    if j != i and any(S.multiply(cj.central_idempotent, img)):
                        parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(comps)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for members in sorted(groups.values()):
        sub = Subspace.zero(S.dim)
        for i in members:
            sub = sub + comps[i].subspace
        if not is_h_invariant(sub, act):
            raise NotHInvariant(f"block {tuple(members)} is not invariant")
        for i in members:
            if _ideal_closure(S, act, comps[i].subspace) != sub:
                raise NotHSimple(f"block {tuple(members)} has a proper invariant ideal "
                                 f"generated by component {i}")
        out.append(HComponent(component_indices=tuple(members), subspace=sub))
    return out
