from fractions import Fraction

import pytest

from hopfpi import zoo
from hopfpi.action import (
    ANTIAUTOMORPHISM, AUTOMORPHISM, DERIVATION, Generator, generalized, h_simple_grouping,
    induced_quotient_action, is_h_invariant, operator_algebra_basis, trivial_action, verify_product_rule,
    verify_zeta_rule,
)
from hopfpi.algebra import jacobson_radical, quotient, simple_decomposition
from hopfpi.errors import NotHInvariant, NotHSimple, ProductRuleViolation
from hopfpi.invariants import codimension_rank
from hopfpi.linalg import Subspace, identity_matrix, matmul

M2T = zoo.load("m2-transpose")
BAH = zoo.load("bahturin-m2")
ADE12 = zoo.load("m2-ad-e12")


def test_product_rule_examples():
    A = M2T.algebra
    T = M2T.generators[0].matrix
    assert verify_product_rule(A, T, ANTIAUTOMORPHISM) is None
    assert verify_product_rule(A, T, AUTOMORPHISM) is not None
    phi = BAH.generators[0].matrix
    assert verify_product_rule(BAH.algebra, phi, AUTOMORPHISM) is None
    ad = ADE12.generators[0].matrix
    assert verify_product_rule(ADE12.algebra, ad, DERIVATION) is None
    assert verify_product_rule(ADE12.algebra, ad, AUTOMORPHISM) is not None


def test_generalized_rule():
    A = M2T.algebra
    T = M2T.generators[0].matrix
    declared = [identity_matrix(4), T]
    anti = generalized([((0, 0), (0, 0), (0, 1), (0, 1))])
    assert verify_product_rule(A, T, anti, declared) is None
    wrong = generalized([((0, 1), (0, 1), (0, 0), (0, 0))])
    assert verify_product_rule(A, T, wrong, declared) is not None


def test_bad_generator_is_rejected():
    A = zoo.full_matrix(2)
    T = M2T.generators[0].matrix
    with pytest.raises(ProductRuleViolation):
        operator_algebra_basis(A, [Generator.make("T", T, AUTOMORPHISM)])


def test_closure_examples():
    assert trivial_action(zoo.full_matrix(2)).m == 1
    act = M2T.action()
    assert act.m == 2 and act.names == ("id", "T")
    bact = BAH.action()
    assert bact.m == 2
    phi = BAH.generators[0].matrix
    ident = identity_matrix(8)
    # (phi - id)^2 = 0, hence phi^2 = 2 phi - id
    assert matmul(phi, phi) == tuple(tuple(2 * a - b for a, b in zip(r1, r2)) for r1, r2 in zip(phi, ident))
    assert zoo.load("m2-ad").action().m == 10


@pytest.mark.parametrize("name", ["m2-transpose", "bahturin-m2", "m2-ad-e12", "m2-ad", "qq-swap"])
def test_zeta_basis_closed_and_rules_verify(name):
    model = zoo.load(name)
    act = model.action()
    assert act.operators[0] == identity_matrix(model.algebra.dim)
    assert act.is_closed()
    for j in range(act.m):
        assert verify_zeta_rule(model.algebra, act, j) is None


def test_rebased_rules_still_verify():
    act = zoo.load("m2-ad-e12").action()
    A = zoo.full_matrix(2)
    order = list(reversed(range(act.m)))
    new = act.rebased(order, [Fraction(k + 2, 3) for k in range(act.m)])
    for j in range(new.m):
        assert verify_zeta_rule(A, new, j) is None


def test_invariance_examples():
    act = BAH.action()
    assert is_h_invariant(jacobson_radical(BAH.algebra).J, act)
    e12 = Subspace.span([(0, 1, 0, 0)], 4)
    assert not is_h_invariant(e12, M2T.action())
    assert is_h_invariant(e12, trivial_action(zoo.full_matrix(2)))


def _group(model):
    A = model.algebra
    act = model.action()
    rad = jacobson_radical(A)
    Q = quotient(A, rad.J)
    qact = induced_quotient_action(A, act, Q)
    return Q, qact, h_simple_grouping(Q.algebra, simple_decomposition(Q.algebra), qact)


def test_grouping_examples():
    _, _, comps = _group(zoo.load("qq-swap"))
    assert [c.dim for c in comps] == [2]
    _, _, comps = _group(zoo.load("qq"))
    assert [c.dim for c in comps] == [1, 1]
    _, _, comps = _group(M2T)
    assert [c.dim for c in comps] == [4]


def test_grouping_properties():
    for name in ("qq-swap", "m2+q", "ut3", "bahturin-m2"):
        Q, qact, comps = _group(zoo.load(name))
        S = Q.algebra
        total = Subspace.zero(S.dim)
        for i, b in enumerate(comps):
            assert is_h_invariant(b.subspace, qact)
            total = total + b.subspace
            for j, c in enumerate(comps):
                if i != j:
                    assert all(not any(S.multiply(u, v)) for u in b.subspace.basis for v in c.subspace.basis)
        assert total.dim == S.dim


def test_group_action_permutes_components():
    Q, qact, _ = _group(zoo.load("qq-swap"))
    S = Q.algebra
    comps = [c.subspace for c in simple_decomposition(S).components]
    for j in range(qact.m):
        for comp in comps:
            image = Subspace.span([qact.apply(j, v) for v in comp.basis], S.dim)
            assert image in comps


def test_invariant_summands_stay_separate():
    A = zoo.qq().algebra
    # projection onto the first summand is multiplicative
    gen = Generator.make("P", ((1, 0), (0, 0)), AUTOMORPHISM)
    act = operator_algebra_basis(A, [gen])
    comps = h_simple_grouping(A, simple_decomposition(A), act)
    assert [c.dim for c in comps] == [1, 1]


def test_non_h_simple_block_is_detected():
    # M2 + M2 with the automorphism (X, Y) -> (X, X): it maps component 0
    # into component 1, linking them, but 0 + M2 is an invariant ideal.
    M2 = zoo.full_matrix(2)
    A = zoo.direct_sum(M2, M2, "m2+m2")
    rows = [[0] * 8 for _ in range(8)]
    for k in range(4):
        rows[k][k] = 1
        rows[4 + k][k] = 1
    with pytest.raises(NotHSimple):
        gen = Generator.make("copy", rows, AUTOMORPHISM)
        act = operator_algebra_basis(A, [gen])
        h_simple_grouping(A, simple_decomposition(A), act)


def test_induced_action_examples():
    A = BAH.algebra
    Q = quotient(A, jacobson_radical(A).J)
    qact = induced_quotient_action(A, BAH.action(), Q)
    assert qact.m == 1  # phi descends to the identity
    triv = induced_quotient_action(A, trivial_action(A), Q)
    assert triv.m == 1
    A2 = M2T.algebra
    Q2 = quotient(A2, jacobson_radical(A2).J)
    assert induced_quotient_action(A2, M2T.action(), Q2).operators == M2T.action().operators


def test_induced_action_needs_invariant_ideal():
    # Q e + Q n with e^2 = e and every other product zero; J = Q n.
    # h: n -> e, e -> 0 kills A^2, so the empty generalized rule holds.
    from hopfpi.algebra import Algebra
    A = Algebra(2, {(0, 0): [1, 0]})
    gen = Generator.make("h", ((0, 1), (0, 0)), generalized([]))
    act = operator_algebra_basis(A, [gen])
    J = jacobson_radical(A).J
    assert J == Subspace.span([(0, 1)], 2)
    assert not is_h_invariant(J, act)
    with pytest.raises(NotHInvariant):
        induced_quotient_action(A, act, quotient(A, J))
