"""Partitions, tableaux, S_n characters and Young symmetrizers.

Permutations are tuples in one-line notation on 1..n. ``compose(a, b)`` is
the map i -> a(b(i)), so b acts first.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .linalg import frac
from .polynomials import HPolynomial, sn_act

Partition = tuple


# ------------------------------------------------------------- partitions

def partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n == 0:
        return [()]
    out = []

    def rec(remaining, largest, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for k in range(min(remaining, largest), 0, -1):
            prefix.append(k)
            rec(remaining - k, k, prefix)
            prefix.pop()

    rec(n, n, [])
    return out


def is_partition(lam: Sequence[int]) -> bool:
    return all(p > 0 for p in lam) and all(a >= b for a, b in zip(lam, lam[1:]))


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0])) if lam else ()


def hook_lengths(lam: Partition) -> list[list[int]]:
    cols = conjugate(lam)
    return [[lam[i] - j + cols[j] - i - 1 for j in range(lam[i])] for i in range(len(lam))]


def dim_irreducible(lam: Partition) -> int:
    """f^lambda by the hook-length formula."""
    n = sum(lam)
    prod = 1
    for row in hook_lengths(lam):
        for h in row:
            prod *= h
    return math.factorial(n) // prod


def standard_tableaux(lam: Partition) -> list["Tableau"]:
    """Brute-force enumeration: place n, n-1, ... into removable corners."""
    lam = tuple(lam)
    n = sum(lam)
    out = []

    def rec(shape, filling):
        k = sum(shape)
        if k == 0:
            rows = [[filling[i, j] for j in range(lam[i])] for i in range(len(lam))]
            out.append(Tableau(lam, rows))
            return
        for i, p in enumerate(shape):
            if p > 0 and (i + 1 == len(shape) or shape[i + 1] < p):
                filling[i, p - 1] = k
                rec(shape[:i] + (p - 1,) + shape[i + 1:], filling)
                del filling[i, p - 1]

    rec(lam, {})
    return sorted(out, key=lambda t: t.rows) if n else out


# ------------------------------------------------------------ permutations

def identity_perm(n: int) -> tuple:
    return tuple(range(1, n + 1))


def compose(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(a: Sequence[int]) -> tuple:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[v - 1] = i + 1
    return tuple(out)


def cycle_type(a: Sequence[int]) -> Partition:
    seen, lengths = set(), []
    for start in range(1, len(a) + 1):
        if start in seen:
            continue
        length, k = 0, start
        while k not in seen:
            seen.add(k)
            k = a[k - 1]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def sign(a: Sequence[int]) -> int:
    return -1 if sum(c - 1 for c in cycle_type(a)) % 2 else 1


def class_size(mu: Partition) -> int:
    """n! / prod_k (k^{m_k} m_k!)."""
    n = sum(mu)
    denom = 1
    for k in set(mu):
        mk = mu.count(k)
        denom *= k**mk * math.factorial(mk)
    return math.factorial(n) // denom


def class_representative(mu: Partition) -> tuple:
    """Product of consecutive cycles (1..mu_1)(mu_1+1..) in one-line form."""
    n = sum(mu)
    perm = list(range(1, n + 1))
    start = 1
    for k in mu:
        for i in range(k):
            perm[start + i - 1] = start + (i + 1) % k
        start += k
    return tuple(perm)


def permutations(n: int) -> Iterable[tuple]:
    return itertools.permutations(range(1, n + 1))


# -------------------------------------------------------------- characters

def _beta(lam: Partition, length: int) -> tuple:
    lam = tuple(lam) + (0,) * (length - len(lam))
    return tuple(lam[i] + length - 1 - i for i in range(length))


@lru_cache(maxsize=None)
def _mn(beta: tuple, mu: tuple) -> int:
    # Murnaghan-Nakayama on beta-numbers: removing a rim hook of size k means
    # lowering one bead by k onto an empty position; the sign is the parity
    # of beads jumped over.
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in beads:
            jumped = sum(1 for c in beta if b - k < c < b)
            new = tuple(sorted((beads - {b}) | {b - k}, reverse=True))
            total += (-1) ** jumped * _mn(new, rest)
    return total


def irreducible_character(lam: Partition, mu: Partition) -> int:
    lam, mu = tuple(lam), tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise DimensionMismatch(f"{lam} and {mu} partition different integers")
    return _mn(_beta(lam, len(lam)), mu)


@lru_cache(maxsize=None)
def character_table(n: int) -> dict:
    """{(lam, mu): chi^lam(mu)} over partitions of n."""
    parts = partitions(n)
    return {(lam, mu): irreducible_character(lam, mu) for lam in parts for mu in parts}


# --------------------------------------------------------------- tableaux

class Tableau:
    __slots__ = ("shape", "rows")

    def __init__(self, shape: Sequence[int], rows: Sequence[Sequence[int]]):
        shape = tuple(shape)
        rows = tuple(tuple(r) for r in rows)
        if not is_partition(shape) or tuple(len(r) for r in rows) != shape:
            raise ValueError(f"rows {rows} do not fill shape {shape}")
        n = sum(shape)
        if sorted(v for r in rows for v in r) != list(range(1, n + 1)):
            raise ValueError("tableau entries must be a bijective filling by 1..n")
        self.shape = shape
        self.rows = rows

    @property
    def n(self) -> int:
        return sum(self.shape)

    @property
    def columns(self) -> tuple:
        return tuple(tuple(r[j] for r in self.rows if len(r) > j) for j in range(self.shape[0]))

    def is_standard(self) -> bool:
        return (all(list(r) == sorted(r) for r in self.rows)
                and all(list(c) == sorted(c) for c in self.columns))

    def relabel(self, tau: Sequence[int]) -> "Tableau":
        return Tableau(self.shape, [[tau[v - 1] for v in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Tableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"Tableau({list(map(list, self.rows))})"


def canonical_tableau(lam: Partition) -> Tableau:
    """Row-major filling by 1..n."""
    rows, k = [], 1
    for p in lam:
        rows.append(list(range(k, k + p)))
        k += p
    return Tableau(lam, rows)


def _stabilizer(n: int, blocks: Sequence[Sequence[int]]) -> list[tuple]:
    out = []
    for images in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = list(range(1, n + 1))
        for block, image in zip(blocks, images):
            for a, b in zip(block, image):
                perm[a - 1] = b
        out.append(tuple(perm))
    return out


def row_group(T: Tableau) -> list[tuple]:
    return _stabilizer(T.n, T.rows)


def column_group(T: Tableau) -> list[tuple]:
    return _stabilizer(T.n, T.columns)


# ------------------------------------------------------------ group algebra

class GroupAlgebraElement:
    """Finite Q-combination of permutations of 1..n."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=()):
        self.n = n
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for perm, c in items:
            perm = tuple(perm)
            if sorted(perm) != list(range(1, n + 1)):
                raise ValueError(f"{perm} is not a permutation of 1..{n}")
            acc[perm] = acc.get(perm, 0) + frac(c)
        self.terms = {k: acc[k] for k in sorted(acc) if acc[k]}

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {identity_perm(n): 1})

    def _check(self, other):
        if self.n != other.n:
            raise DimensionMismatch("group algebra elements of different degree")

    def __add__(self, other):
        self._check(other)
        return GroupAlgebraElement(self.n, list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        c = frac(c)
        return GroupAlgebraElement(self.n, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return frac(other) * self
        self._check(other)
        acc: dict = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                ab = compose(a, b)
                acc[ab] = acc.get(ab, 0) + x * y
        return GroupAlgebraElement(self.n, acc)

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and (self.n, self.terms) == (other.n, other.terms)

    def __hash__(self):
        return hash((self.n, tuple(self.terms.items())))

    def __repr__(self):
        return f"GroupAlgebraElement({self.n}, {self.terms})"


def row_symmetrizer(T: Tableau) -> GroupAlgebraElement:
    return GroupAlgebraElement(T.n, {p: 1 for p in row_group(T)})


def column_antisymmetrizer(T: Tableau) -> GroupAlgebraElement:
    return GroupAlgebraElement(T.n, {p: sign(p) for p in column_group(T)})


def young_symmetrizer(T: Tableau, variant: str = "e") -> GroupAlgebraElement:
    """e_T = a_T b_T, or e*_T = b_T a_T for ``variant="e_star"``."""
    a, b = row_symmetrizer(T), column_antisymmetrizer(T)
    if variant == "e":
        return a * b
    if variant == "e_star":
        return b * a
    raise ValueError(f"unknown symmetrizer variant {variant!r}")


def apply_group_element(g: GroupAlgebraElement, f: HPolynomial) -> HPolynomial:
    if g.n != f.n:
        raise DimensionMismatch(f"group element on {g.n} letters, polynomial in {f.n} variables")
    terms = []
    for perm, c in g.terms.items():
        for mono, v in sn_act(perm, f).terms.items():
            terms.append((mono, c * v))
    return HPolynomial(f.n, f.m, terms)


def multiplicity_from_character(n: int, trace_by_class: dict) -> dict:
    """Decompose a character given on classes into irreducible multiplicities.

    Returns {lam: Fraction}; callers decide what to do with non-integers.
    """
    table = character_table(n)
    total = math.factorial(n)
    out = {}
    for lam in partitions(n):
        s = sum(class_size(mu) * trace_by_class[mu] * table[lam, mu] for mu in partitions(n))
        out[lam] = Fraction(s, total)
    return out
