"""Multilinear H-polynomials P^H_n and their evaluation.

A monomial ``HMonomial(sigma, ops)`` stands for

    x_{sigma(1)}^{g_{ops[0]}} x_{sigma(2)}^{g_{ops[1]}} ... x_{sigma(n)}^{g_{ops[n-1]}}

where ``sigma`` is a permutation of 1..n in one-line notation and the g's
index the zeta basis of the action.
"""

from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .action import HActionData
from .algebra import Algebra
from .errors import DimensionMismatch, ModelParseError, SizeLimitExceeded
from .linalg import Vector, frac, vadd, vscale, zero_vector

DEFAULT_BASIS_LIMIT = 10**6


class HMonomial(NamedTuple):
    sigma: tuple
    ops: tuple


class HPolynomial:
    """Exact linear combination of multilinear H-monomials."""

    __slots__ = ("n", "m", "terms")

    def __init__(self, n: int, m: int, terms: dict | Iterable = ()):
        self.n = n
        self.m = m
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict = {}
        for mono, c in items:
            mono = HMonomial(tuple(mono[0]), tuple(mono[1]))
            if sorted(mono.sigma) != list(range(1, n + 1)) or len(mono.ops) != n:
                raise ValueError(f"{mono} is not a multilinear monomial in {n} variables")
            if any(not 0 <= o < m for o in mono.ops):
                raise ValueError(f"operator index out of range in {mono}")
            acc[mono] = acc.get(mono, 0) + frac(c)
        self.terms = {k: acc[k] for k in sorted(acc) if acc[k]}

    @classmethod
    def monomial(cls, sigma, ops=None, coefficient=1, m: int = 1) -> "HPolynomial":
        sigma = tuple(sigma)
        ops = tuple(ops) if ops is not None else (0,) * len(sigma)
        return cls(len(sigma), m, {HMonomial(sigma, ops): coefficient})

    @classmethod
    def zero(cls, n: int, m: int) -> "HPolynomial":
        return cls(n, m)

    def _check(self, other):
        if (self.n, self.m) != (other.n, other.m):
            raise DimensionMismatch("polynomials live in different spaces")

    def __add__(self, other):
        self._check(other)
        return HPolynomial(self.n, self.m, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return HPolynomial(self.n, self.m, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = frac(c)
        return HPolynomial(self.n, self.m, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, HPolynomial):
            return NotImplemented
        return (self.n, self.m, self.terms) == (other.n, other.m, other.terms)

    def __hash__(self):
        return hash((self.n, self.m, tuple(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"HPolynomial({to_text(self)})"


def basis_size(n: int, m: int) -> int:
    return m**n * math.factorial(n)


def enumerate_basis(n: int, m: int, limit: int = DEFAULT_BASIS_LIMIT) -> list[HMonomial]:
    """All m^n n! monomials: sigma lexicographic, then ops lexicographic."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    size = basis_size(n, m)
    if size > limit:
        raise SizeLimitExceeded(f"P^H_{n} has {size} monomials (limit {limit})")
    return [HMonomial(sigma, ops)
            for sigma in itertools.permutations(range(1, n + 1))
            for ops in itertools.product(range(m), repeat=n)]


def _check_action(f: HPolynomial, A: Algebra, act: HActionData):
    if f.m != act.m:
        raise DimensionMismatch(f"polynomial uses {f.m} operators, action has {act.m}")
    if act.dim != A.dim:
        raise DimensionMismatch("action and algebra dimensions differ")


def evaluate(f: HPolynomial, args: Sequence, A: Algebra, act: HActionData) -> Vector:
    """f(a_1, ..., a_n): substitute x_i^g -> g(a_i), multiply left to right."""
    _check_action(f, A, act)
    if len(args) != f.n:
        raise DimensionMismatch(f"expected {f.n} arguments, got {len(args)}")
    cache: dict = {}

    def image(j, i):
        if (j, i) not in cache:
            cache[j, i] = act.apply(j, args[i - 1])
        return cache[j, i]

    out = zero_vector(A.dim)
    for (sigma, ops), c in f.terms.items():
        value = image(ops[0], sigma[0])
        for o, s in zip(ops[1:], sigma[1:]):
            value = A.multiply(value, image(o, s))
            if not any(value):
                break
        if any(value):
            out = vadd(out, vscale(c, value))
    return out


def sn_act(tau: Sequence[int], f: HPolynomial) -> HPolynomial:
    """Rename variables x_i -> x_{tau(i)}."""
    tau = tuple(tau)
    if sorted(tau) != list(range(1, f.n + 1)):
        raise ValueError(f"{tau} is not a permutation of 1..{f.n}")
    return HPolynomial(f.n, f.m, {HMonomial(tuple(tau[s - 1] for s in sigma), ops): c
                                  for (sigma, ops), c in f.terms.items()})


def _perm_sign(images: Sequence[int]) -> int:
    sign, seen = 1, set()
    for start in range(len(images)):
        if start in seen:
            continue
        length, k = 0, start
        while k not in seen:
            seen.add(k)
            k = images[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def alternate(f: HPolynomial, X: Iterable[int]) -> HPolynomial:
    """sum over tau in Sym(X) of sign(tau) * tau f."""
    X = sorted(set(X))
    if any(not 1 <= x <= f.n for x in X):
        raise ValueError("alternation set outside 1..n")
    terms = []
    for image in itertools.permutations(X):
        tau = list(range(1, f.n + 1))
        for a, b in zip(X, image):
            tau[a - 1] = b
        sign = _perm_sign([X.index(b) for b in image])
        for mono, c in sn_act(tau, f).terms.items():
            terms.append((mono, sign * c))
    return HPolynomial(f.n, f.m, terms)


def is_identity(f: HPolynomial, A: Algebra, act: HActionData) -> bool:
    """True iff f vanishes on every tuple of basis elements.

    By multilinearity this is equivalent to f vanishing on all of A^n.
    """
    _check_action(f, A, act)
    if not f.terms:
        return True
    basis = [A.basis_vector(i) for i in range(A.dim)]
    return all(not any(evaluate(f, list(t), A, act))
               for t in itertools.product(basis, repeat=f.n))


def evaluation_matrix(A: Algebra, act: HActionData, n: int,
                      limit_rows: int = DEFAULT_BASIS_LIMIT, limit_cols: int = 4 * 10**6):
    """The literal evaluation matrix over Q.

    Rows follow :func:`enumerate_basis`; columns are (basis tuple, output
    coordinate) with tuples in lexicographic order.
    """
    cols = A.dim ** (n + 1)
    if cols > limit_cols:
        raise SizeLimitExceeded(f"{cols} evaluation columns (limit {limit_cols})")
    monos = enumerate_basis(n, act.m, limit_rows)
    images = [[act.apply(j, A.basis_vector(b)) for b in range(A.dim)] for j in range(act.m)]
    tuples = list(itertools.product(range(A.dim), repeat=n))
    rows = []
    for sigma, ops in monos:
        row = []
        for t in tuples:
            value = images[ops[0]][t[sigma[0] - 1]]
            for o, s in zip(ops[1:], sigma[1:]):
                if not any(value):
                    break
                value = A.multiply(value, images[o][t[s - 1]])
            row.extend(value)
        rows.append(row)
    return monos, rows


# ------------------------------------------------------------- text format

_TERM = re.compile(r"\s*([+-]?\s*\d+(?:/\d+)?)\s*\*\s*((?:x\d+(?:\^[A-Za-z0-9_.]+)?\s*)+)")
_VAR = re.compile(r"x(\d+)(?:\^([A-Za-z0-9_.]+))?")


def to_text(f: HPolynomial, names: Sequence[str] | None = None) -> str:
    """Canonical text: ``c * x1^g x2 ...`` terms joined by `` + ``."""
    if names is None:
        names = ["id"] + [f"g{j}" for j in range(1, f.m)]
    if not f.terms:
        return "0"
    parts = []
    for (sigma, ops), c in f.terms.items():
        vars_ = " ".join(f"x{s}" if names[o] == "id" else f"x{s}^{names[o]}" for s, o in zip(sigma, ops))
        parts.append(f"{c} * {vars_}")
    return " + ".join(parts)


def parse_polynomial(text: str, names: Sequence[str] | None = None, m: int | None = None) -> HPolynomial:
    """Inverse of :func:`to_text`."""
    text = text.strip()
    if names is None:
        names = ["id"] + [f"g{j}" for j in range(1, m or 1)]
    m = len(names)
    index = {name: j for j, name in enumerate(names)}
    if text == "0":
        raise ModelParseError("cannot infer n from the zero polynomial")
    terms, pos, n = [], 0, None
    while pos < len(text):
        if terms:
            sep = re.compile(r"\s*\+\s*").match(text, pos)
            if not sep:
                raise ModelParseError("expected ' + ' between terms", 1, pos + 1)
            pos = sep.end()
        mt = _TERM.match(text, pos)
        if not mt:
            raise ModelParseError("malformed term", 1, pos + 1)
        coef = Fraction(mt.group(1).replace(" ", ""))
        sigma, ops = [], []
        for v in _VAR.finditer(mt.group(2)):
            sigma.append(int(v.group(1)))
            name = v.group(2) or "id"
            if name not in index:
                raise ModelParseError(f"unknown operator {name!r}", 1, pos + 1)
            ops.append(index[name])
        if n is None:
            n = len(sigma)
        terms.append(((tuple(sigma), tuple(ops)), coef))
        pos = mt.end()
    return HPolynomial(n, m, terms)
