import math
import random

import pytest

from hopfpi.linalg import Subspace, rank
from hopfpi.polynomials import HPolynomial
from hopfpi.symmetric import (
    GroupAlgebraElement, Tableau, apply_group_element, canonical_tableau, character_table, class_representative,
    class_size, column_antisymmetrizer, compose, conjugate, cycle_type, dim_irreducible, hook_lengths, inverse,
    irreducible_character, partitions, permutations, sign, standard_tableaux, young_symmetrizer,
)


def test_partitions_examples():
    assert partitions(1) == [(1,)]
    assert len(partitions(4)) == 5
    assert len(partitions(6)) == 11
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_conjugate_and_hooks():
    assert conjugate((3, 1)) == (2, 1, 1)
    assert hook_lengths((3, 2)) == [[4, 3, 1], [2, 1]]


def test_dim_irreducible_examples():
    assert dim_irreducible((5,)) == 1
    assert dim_irreducible((1,) * 5) == 1
    assert dim_irreducible((2, 1)) == 2
    assert dim_irreducible((3, 2)) == 5


@pytest.mark.parametrize("n", range(1, 9))
def test_hook_formula_matches_enumeration(n):
    for lam in partitions(n):
        tabs = standard_tableaux(lam)
        assert all(t.is_standard() for t in tabs)
        assert len(set(tabs)) == len(tabs) == dim_irreducible(lam)


@pytest.mark.parametrize("n", range(1, 9))
def test_sum_of_squares(n):
    assert sum(dim_irreducible(lam) ** 2 for lam in partitions(n)) == math.factorial(n)


def test_permutation_helpers():
    a, b = (2, 3, 1), (2, 1, 3)
    assert compose(a, b) == (3, 2, 1)
    assert compose(a, inverse(a)) == (1, 2, 3)
    assert cycle_type((2, 1, 4, 3, 5)) == (2, 2, 1)
    assert sign((2, 1, 3)) == -1 and sign((2, 3, 1)) == 1
    for n in range(1, 6):
        for mu in partitions(n):
            assert cycle_type(class_representative(mu)) == mu
        assert sum(class_size(mu) for mu in partitions(n)) == math.factorial(n)


def test_character_examples():
    for mu in partitions(5):
        assert irreducible_character((5,), mu) == 1
        assert irreducible_character((1,) * 5, mu) == sign(class_representative(mu))
    assert irreducible_character((2, 1), (3,)) == -1
    assert irreducible_character((2, 1), (2, 1)) == 0
    assert irreducible_character((2, 1), (1, 1, 1)) == 2
    for lam in partitions(6):
        assert irreducible_character(lam, (1,) * 6) == dim_irreducible(lam)


@pytest.mark.parametrize("n", range(1, 7))
def test_column_orthogonality(n):
    table = character_table(n)
    parts = partitions(n)
    for lam in parts:
        for nu in parts:
            s = sum(class_size(mu) * table[lam, mu] * table[nu, mu] for mu in parts)
            assert s == (math.factorial(n) if lam == nu else 0)


def _left_ideal_character(lam):
    """Oracle: trace of left multiplication on Q S_n e_T, by brute force."""
    T = canonical_tableau(lam)
    n = T.n
    e = young_symmetrizer(T)
    perms = list(permutations(n))
    index = {p: i for i, p in enumerate(perms)}

    def coords(x):
        v = [0] * len(perms)
        for p, c in x.terms.items():
            v[index[p]] = c
        return v

    V = Subspace.span([coords(GroupAlgebraElement(n, {g: 1}) * e) for g in perms], len(perms))
    out = {}
    for mu in partitions(n):
        g = GroupAlgebraElement(n, {class_representative(mu): 1})
        out[mu] = sum(V.coordinates(coords(g * GroupAlgebraElement(n, dict(zip(perms, b)))))[k]
                      for k, b in enumerate(V.basis))
    return out


@pytest.mark.parametrize("n", range(1, 5))
def test_characters_match_left_ideal_traces(n):
    for lam in partitions(n):
        oracle = _left_ideal_character(lam)
        for mu, value in oracle.items():
            assert irreducible_character(lam, mu) == value


def test_symmetrizer_examples():
    n = 3
    row = young_symmetrizer(canonical_tableau((3,)))
    assert row == GroupAlgebraElement(n, {p: 1 for p in permutations(n)})
    col = young_symmetrizer(canonical_tableau((1, 1, 1)))
    assert col == GroupAlgebraElement(n, {p: sign(p) for p in permutations(n)})
    e = young_symmetrizer(canonical_tableau((2, 1)))
    assert e * e == 3 * e


@pytest.mark.parametrize("n", range(1, 5))
def test_symmetrizers_are_quasi_idempotent(n):
    for lam in partitions(n):
        T = canonical_tableau(lam)
        for variant in ("e", "e_star"):
            e = young_symmetrizer(T, variant)
            assert e * e == (math.factorial(n) // dim_irreducible(lam)) * e


def test_tableau_validation():
    with pytest.raises(ValueError):
        Tableau((2, 1), [[1, 2], [2]])
    with pytest.raises(ValueError):
        Tableau((2, 1), [[1, 2, 3]])
    T = Tableau((2, 1), [[3, 1], [2]])
    assert not T.is_standard()
    assert T.columns == ((3, 2), (1,))


def test_apply_group_element_examples():
    f = HPolynomial.monomial((1, 2))
    assert apply_group_element(GroupAlgebraElement.identity(2), f) == f
    alt = GroupAlgebraElement(2, {p: sign(p) for p in permutations(2)})
    assert apply_group_element(alt, f) == f - HPolynomial.monomial((2, 1))


def test_column_antisymmetrizer_kills_repeated_column_variables():
    from hopfpi import zoo
    from hopfpi.polynomials import evaluate
    model = zoo.load("m2")
    A, act = model.algebra, model.action()
    T = canonical_tableau((2, 1))  # columns {1, 3} and {2}
    b = column_antisymmetrizer(T)
    g = apply_group_element(b, HPolynomial.monomial((1, 2, 3)))
    e12, e21 = A.basis_vector(1), A.basis_vector(2)
    assert not any(evaluate(g, [e12, e21, e12], A, act))
    assert any(evaluate(g, [e12, e21, A.basis_vector(0)], A, act))


def test_apply_is_an_action():
    rng = random.Random(5)
    perms = list(permutations(3))
    f = HPolynomial.monomial((1, 2, 3)) + 2 * HPolynomial.monomial((3, 1, 2))
    for _ in range(10):
        a = GroupAlgebraElement(3, {rng.choice(perms): rng.randint(-2, 2) for _ in range(3)})
        b = GroupAlgebraElement(3, {rng.choice(perms): rng.randint(-2, 2) for _ in range(3)})
        assert apply_group_element(a * b, f) == apply_group_element(a, apply_group_element(b, f))
