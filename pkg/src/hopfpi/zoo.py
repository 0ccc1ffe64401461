"""Built-in models, addressable as ``zoo:<name>``.

    point              Q
    nil<p>             span{x, ..., x^(p-1)} with x^p = 0 (e.g. nil3)
    ut<m>, m<m>        upper triangular / full matrix algebras (ut2, m2, ...)
    m<m>-transpose     M_m with the transpose anti-automorphism
    m<m>-ad            M_m with ad(e_ij) for all matrix units
    m<m>-ad-e12        M_m with the single derivation ad(e_12)
    bahturin-m<m>      {(C D; 0 0)} in M_2m with phi(C, D) = (C, C + D)
    bahturin-m<m>-ad   the same algebra with ad(a) for every basis element a
    qq, qq-swap        Q + Q, trivially or with the swap automorphism
    m2+q               M_2 + Q
"""

from __future__ import annotations

import re

from .action import ANTIAUTOMORPHISM, AUTOMORPHISM, DERIVATION, Generator
from .algebra import Algebra
from .errors import ValidationError
from .model import Model


def _units(m: int, rows: int | None = None, cols: int | None = None):
    """Matrix units e_ij (as m x m matrices) for i < rows, j < cols."""
    out, labels = [], []
    for i in range(rows or m):
        for j in range(cols or m):
            M = [[0] * m for _ in range(m)]
            M[i][j] = 1
            out.append(M)
            labels.append(f"e{i + 1}{j + 1}" if m < 10 else f"e{i + 1}_{j + 1}")
    return out, labels


def point() -> Model:
    return Model("point", Algebra(1, {(0, 0): [1]}, labels=["1"], unit=[1], name="point"), ())


def nil(p: int) -> Model:
    if p < 2:
        raise ValidationError("nil<p> needs p >= 2")
    d = p - 1
    products = {}
    for i in range(1, p):
        for j in range(1, p):
            if i + j < p:
                v = [0] * d
                v[i + j - 1] = 1
                products[i - 1, j - 1] = v
    labels = ["x"] + [f"x{k}" for k in range(2, p)]
    return Model(f"nil{p}", Algebra(d, products, labels=labels, name=f"nil{p}"), ())


def full_matrix(m: int) -> Algebra:
    mats, labels = _units(m)
    unit = [1 if i == j else 0 for i in range(m) for j in range(m)]
    return Algebra.from_matrices(mats, labels=labels, name=f"m{m}", unit=unit)


def upper_triangular(m: int) -> Algebra:
    mats, labels = [], []
    for i in range(m):
        for j in range(i, m):
            M = [[0] * m for _ in range(m)]
            M[i][j] = 1
            mats.append(M)
            labels.append(f"e{i + 1}{j + 1}")
    unit = [1 if i == j else 0 for i in range(m) for j in range(i, m)]
    return Algebra.from_matrices(mats, labels=labels, name=f"ut{m}", unit=unit)


def _operator_matrix(A: Algebra, images) -> list:
    """Matrix with columns the coordinate vectors images[j] = h(e_j)."""
    return [[images[j][i] for j in range(A.dim)] for i in range(A.dim)]


def transpose_model(m: int) -> Model:
    A = full_matrix(m)
    index = {(i, j): i * m + j for i in range(m) for j in range(m)}
    images = []
    for i in range(m):
        for j in range(m):
            v = [0] * A.dim
            v[index[j, i]] = 1
            images.append(v)
    gen = Generator.make("T", _operator_matrix(A, images), ANTIAUTOMORPHISM)
    return Model(f"m{m}-transpose", A, (gen,))


def _ad(A: Algebra, a) -> list:
    images = []
    for j in range(A.dim):
        b = A.basis_vector(j)
        images.append([x - y for x, y in zip(A.multiply(a, b), A.multiply(b, a))])
    return _operator_matrix(A, images)


def ad_model(m: int, only_e12: bool = False) -> Model:
    A = full_matrix(m)
    if only_e12:
        gens = (Generator.make("ad_e12", _ad(A, A.basis_vector(1)), DERIVATION),)
        return Model(f"m{m}-ad-e12", A, gens)
    gens = tuple(Generator.make(f"ad_{A.labels[k]}", _ad(A, A.basis_vector(k)), DERIVATION)
                 for k in range(A.dim))
    return Model(f"m{m}-ad", A, gens)


def bahturin_algebra(m: int) -> Algebra:
    mats, labels = _units(2 * m, rows=m)
    return Algebra.from_matrices(mats, labels=labels, name=f"bahturin-m{m}")


def bahturin(m: int, derivations: bool = False) -> Model:
    A = bahturin_algebra(m)
    if derivations:
        gens = tuple(Generator.make(f"ad_{A.labels[k]}", _ad(A, A.basis_vector(k)), DERIVATION)
                     for k in range(A.dim))
        return Model(f"bahturin-m{m}-ad", A, gens)
    # basis index of e_{i,j} (0-based) is i * 2m + j
    images = []
    for i in range(m):
        for j in range(2 * m):
            v = [0] * A.dim
            v[i * 2 * m + j] = 1
            if j < m:
                v[i * 2 * m + j + m] = 1
            images.append(v)
    gen = Generator.make("phi", _operator_matrix(A, images), AUTOMORPHISM)
    return Model(f"bahturin-m{m}", A, (gen,))


def direct_sum(A: Algebra, B: Algebra, name: str) -> Algebra:
    products = {}
    for (i, j, k), c in A.structure_constants.items():
        products.setdefault((i, j), {})[k] = c
    for (i, j, k), c in B.structure_constants.items():
        products.setdefault((A.dim + i, A.dim + j), {})[A.dim + k] = c
    unit = None
    if A.unit is not None and B.unit is not None:
        unit = list(A.unit) + list(B.unit)
    labels = [f"{l}" for l in A.labels] + [f"{l}'" for l in B.labels]
    return Algebra(A.dim + B.dim, products, labels=labels, unit=unit, name=name)


def qq(swap: bool = False) -> Model:
    Q = point().algebra
    A = direct_sum(Q, Q, "qq-swap" if swap else "qq")
    if not swap:
        return Model("qq", A, ())
    return Model("qq-swap", A, (Generator.make("s", [[0, 1], [1, 0]], AUTOMORPHISM),))


def m2_plus_q() -> Model:
    return Model("m2+q", direct_sum(full_matrix(2), point().algebra, "m2+q"), ())


_PATTERNS = [
    (r"point", lambda: point()),
    (r"nil(\d+)", lambda p: nil(int(p))),
    (r"ut(\d+)", lambda m: Model(f"ut{m}", upper_triangular(int(m)), ())),
    (r"m(\d+)", lambda m: Model(f"m{m}", full_matrix(int(m)), ())),
    (r"m(\d+)-transpose", lambda m: transpose_model(int(m))),
    (r"m(\d+)-ad", lambda m: ad_model(int(m))),
    (r"m(\d+)-ad-e12", lambda m: ad_model(int(m), only_e12=True)),
    (r"bahturin-m(\d+)", lambda m: bahturin(int(m))),
    (r"bahturin-m(\d+)-ad", lambda m: bahturin(int(m), derivations=True)),
    (r"qq", lambda: qq()),
    (r"qq-swap", lambda: qq(swap=True)),
    (r"m2\+q", lambda: m2_plus_q()),
]

NAMES = ("point", "nil3", "ut2", "ut3", "m2", "m2-transpose", "m2-ad", "m2-ad-e12",
         "bahturin-m2", "bahturin-m2-ad", "qq", "qq-swap", "m2+q")


def load(name: str) -> Model:
    for pattern, build in _PATTERNS:
        mt = re.fullmatch(pattern, name)
        if mt:
            args = [a for a in mt.groups()]
            if args and int(args[0]) < 1:
                break
            return build(*args)
    raise ValidationError(f"unknown zoo model {name!r}")
