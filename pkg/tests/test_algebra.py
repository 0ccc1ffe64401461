from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfpi.algebra import (
    Algebra, center, check_associativity, conjugate_section, find_associativity_violation, is_nilpotent,
    jacobson_radical, lift_idempotent, quotient, simple_decomposition, span_product, wedderburn_decomposition,
    wedderburn_section,
)
from hopfpi.errors import AssociativityError, NotApproxIdempotent, SplitFailure
from hopfpi.linalg import Subspace, vadd, vsub
from hopfpi.zoo import bahturin_algebra, direct_sum, full_matrix, nil, point, upper_triangular

M2 = full_matrix(2)
UT2 = upper_triangular(2)
QQ = direct_sum(point().algebra, point().algebra, "qq")


def e(A, label):
    return A.basis_vector(A.labels.index(label))


def test_associativity_violation_is_reported():
    # e0 e0 = e1, e1 e0 = e0: (e0 e0) e0 = e0 but e0 (e0 e0) = 0
    bad = {(0, 0): [0, 1], (1, 0): [1, 0]}
    with pytest.raises(AssociativityError) as err:
        Algebra(2, bad)
    assert err.value.triple == (0, 0, 0)
    assert find_associativity_violation(Algebra(2, bad, check=False)) == (0, 0, 0)


def test_matrix_units_multiply():
    assert M2.multiply(e(M2, "e11"), e(M2, "e12")) == e(M2, "e12")
    assert M2.multiply(e(M2, "e12"), e(M2, "e11")) == M2.zero()
    check_associativity(M2)
    assert M2.find_unit() == (1, 0, 0, 1)


def test_radical_examples():
    r = jacobson_radical(M2)
    assert r.J.dim == 0 and r.nilpotency_index == 1
    r = jacobson_radical(UT2)
    assert r.J == Subspace.span([e(UT2, "e12")], 3) and r.nilpotency_index == 2
    B = bahturin_algebra(2)
    r = jacobson_radical(B)
    assert r.J.dim == 4 and r.nilpotency_index == 2
    # J is the D block: columns 3 and 4 of the top rows
    assert r.J == Subspace.span([e(B, l) for l in ("e13", "e14", "e23", "e24")], 8)


@pytest.mark.parametrize("A", [M2, UT2, bahturin_algebra(2), nil(4).algebra, upper_triangular(3)])
def test_radical_properties(A):
    r = jacobson_radical(A)
    full = Subspace.full(A.dim)
    assert span_product(A, full, r.J) <= r.J and span_product(A, r.J, full) <= r.J
    assert r.powers[-1].is_zero()
    if r.nilpotency_index > 1:
        assert not r.powers[-2].is_zero()
    S = quotient(A, r.J).algebra
    assert jacobson_radical(S).J.dim == 0


def test_nilpotent():
    A = nil(3).algebra
    assert is_nilpotent(A)
    assert jacobson_radical(A).nilpotency_index == 3


def test_center_examples():
    assert center(M2) == Subspace.span([(1, 0, 0, 1)], 4)
    assert center(QQ).dim == 2
    assert center(UT2) == Subspace.span([(1, 0, 1)], 3)


def test_simple_decomposition_examples():
    dec = simple_decomposition(M2)
    assert [c.subspace.dim for c in dec.components] == [4]
    assert dec.components[0].degree == 2
    dec = simple_decomposition(QQ)
    assert [c.subspace.dim for c in dec.components] == [1, 1]
    dec = simple_decomposition(direct_sum(M2, point().algebra, "m2+q"))
    assert [c.subspace.dim for c in dec.components] == [4, 1]


@pytest.mark.parametrize("S", [M2, QQ, direct_sum(M2, point().algebra, "m2+q"), full_matrix(3)])
def test_decomposition_properties(S):
    dec = simple_decomposition(S)
    total = Subspace.zero(S.dim)
    for i, ci in enumerate(dec.components):
        f = ci.central_idempotent
        assert S.multiply(f, f) == f
        for b in range(S.dim):
            assert S.multiply(f, S.basis_vector(b)) == S.multiply(S.basis_vector(b), f)
        for v in ci.subspace.basis:
            assert S.multiply(f, v) == tuple(Fraction(x) for x in v)
        for j, cj in enumerate(dec.components):
            if i != j:
                assert span_product(S, ci.subspace, cj.subspace).is_zero()
        units = ci.matrix_units
        k = ci.degree
        for a in range(k):
            for b in range(k):
                for c in range(k):
                    for d in range(k):
                        expect = units[a][d] if b == c else S.zero()
                        assert S.multiply(units[a][b], units[c][d]) == expect
        total = total + ci.subspace
    assert total.dim == S.dim


def test_split_failure_on_irrational_center():
    # Q(sqrt 2) = Q[x]/(x^2 - 2)
    A = Algebra(2, {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1], (1, 1): [2, 0]}, unit=[1, 0])
    with pytest.raises(SplitFailure):
        simple_decomposition(A)


def test_lift_idempotent_examples():
    e11, e12 = e(UT2, "e11"), e(UT2, "e12")
    assert lift_idempotent(UT2, e11) == e11
    assert lift_idempotent(UT2, UT2.zero()) == UT2.zero()
    # e11 + e12 is already idempotent, so perturb by 2 e12 and iterate
    x = vadd(e11, vadd(e12, e12))
    y = lift_idempotent(UT2, x)
    assert UT2.multiply(y, y) == y
    assert jacobson_radical(UT2).J.contains(vsub(y, e11))
    with pytest.raises(NotApproxIdempotent):
        lift_idempotent(UT2, vadd(e11, e11))


@settings(max_examples=30, deadline=None)
@given(st.fractions(-6, 6, max_denominator=5), st.fractions(-6, 6, max_denominator=5))
def test_lift_idempotent_property(a, b):
    A = upper_triangular(3)
    # diagonal part e11, arbitrary strictly upper perturbation
    e0 = (1, a, b, 0, 0, 0)
    y = lift_idempotent(A, e0)
    assert A.multiply(y, y) == y
    assert jacobson_radical(A).J.contains(vsub(y, e0))


def test_section_semisimple_is_identity():
    s = wedderburn_section(M2)
    assert s.images == tuple(M2.basis_vector(i) for i in range(4))


def test_section_ut2():
    s = wedderburn_section(UT2)
    k11, k22 = s.images
    assert UT2.multiply(k11, k11) == k11
    assert UT2.multiply(k11, k22) == UT2.zero()
    assert vadd(k11, k22) == (1, 0, 1)
    assert k11[0] == 1 and k11[2] == 0  # e11 + t e12


def test_section_bahturin():
    B = bahturin_algebra(2)
    data = wedderburn_decomposition(B)
    data.section.check(B)
    # kappa(C) = (C, 0): the images avoid the D block
    for img in data.section.images:
        assert all(img[B.labels.index(l)] == 0 for l in ("e13", "e14", "e23", "e24"))


@pytest.mark.parametrize("A", [UT2, bahturin_algebra(2), upper_triangular(3)])
def test_conjugated_section_is_a_section(A):
    s = wedderburn_section(A)
    j = jacobson_radical(A).J.basis[0]
    t = conjugate_section(A, s, j)
    t.check(A)
    assert t.images != s.images
