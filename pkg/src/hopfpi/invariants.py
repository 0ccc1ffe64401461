"""Codimensions, cocharacters, the PI-exponent and related checks.

The evaluation map sends an H-monomial to the function it induces on
tuples of basis elements: a row of length dim(A)^(n+1), columns ordered by
(basis tuple lexicographic, output coordinate).  Its row space W is
isomorphic to P^H_n / (P^H_n ∩ Id^H(A)) as an S_n-module, so c^H_n = dim W.

W is never built as the literal m^n n! row matrix.  For sigma = id the rows
F_w of words w = (j_1, ..., j_k) satisfy

    F_{w+(j)}(t, t_{k+1})[out] = sum_a F_w(t)[a] * Y_j[a, t_{k+1}, out],
    Y_j[a, b, out] = sum_r gamma_j[r, b] * S[a, r, out],

so the span V_k of those rows is grown one letter at a time from a basis of
V_{k-1}.  A permutation sigma only reorders the tuple axes, and
W = sum_sigma sigma(V_n).  Everything runs modulo word-sized primes and is
certified by two disjoint prime sets, with an exact rational fallback.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .action import HActionData, HComponent, h_simple_grouping, induced_quotient_action, is_h_invariant
from .algebra import (Algebra, Quotient, RadicalData, SemisimpleDecomposition, Section, jacobson_radical,
                      quotient, simple_decomposition, span_product, _section)
from .errors import (DimensionMismatch, NonIntegralMultiplicity, NotHInvariant, SizeLimitExceeded,
                     VanishingViolation)
from .linalg import (BadPrime, EchelonModP, ExactEchelon, Subspace, certified, fraction_mod, frac,
                     left_nullspace, matmul_mod)
from .polynomials import (DEFAULT_BASIS_LIMIT, HMonomial, HPolynomial, alternate, basis_size,
                          enumerate_basis, is_identity, sn_act)
from .symmetric import (canonical_tableau, class_representative, class_size, column_group, dim_irreducible,
                        multiplicity_from_character, partitions, row_group, sign, Tableau)

DEFAULT_COLUMN_LIMIT = 4 * 10**6
_BLOCK = 256


# ------------------------------------------------------------ arithmetic

class _ModP:
    exact = False

    def __init__(self, p: int):
        self.p = p

    def array(self, values) -> np.ndarray:
        values = np.asarray(values, dtype=object)
        flat = [fraction_mod(x, self.p) for x in values.ravel()]
        return np.array(flat, dtype=np.int64).reshape(values.shape)

    def matmul(self, a, b):
        return matmul_mod(a, b, self.p)

    def echelon(self, ncols: int):
        return EchelonModP(ncols, self.p, track_sources=True)

    def integer(self, x) -> int:
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x


class _Exact:
    exact = True

    def array(self, values) -> np.ndarray:
        values = np.asarray(values, dtype=object)
        return np.array([frac(x) for x in values.ravel()], dtype=object).reshape(values.shape)

    def matmul(self, a, b):
        return a.dot(b)

    def echelon(self, ncols: int):
        return ExactEchelon(ncols, track_sources=True)

    def integer(self, x) -> int:
        x = frac(x)
        if x.denominator != 1:
            raise NonIntegralMultiplicity(f"character value {x} is not an integer")
        return int(x)


def _tables(A: Algebra, act: HActionData):
    """Exact numpy tables: gamma[j][r, b] and Y[j] of shape (d, d*d)."""
    d = A.dim
    gamma = [np.array(op, dtype=object).reshape(d, d) for op in act.operators]
    S = np.zeros((d, d, d), dtype=object)
    S[...] = Fraction(0)
    for (i, r, k), c in A.structure_constants.items():
        S[i, r, k] = c
    Y = []
    for G in gamma:
        y = np.zeros((d, d, d), dtype=object)
        y[...] = Fraction(0)
        for a in range(d):
            # y[a, b, out] = sum_r G[r, b] S[a, r, out]
            y[a] = G.T.dot(S[a])
        Y.append(y.reshape(d, d * d))
    return gamma, Y


def perm_index(sigma: Sequence[int], d: int) -> np.ndarray:
    """Column gather realizing the row of (sigma, w) from the row of (id, w)."""
    n = len(sigma)
    inv = [0] * n
    for k, s in enumerate(sigma):
        inv[s - 1] = k
    axes = inv + [n]
    return np.arange(d ** (n + 1)).reshape([d] * (n + 1)).transpose(axes).ravel()


def _check_limits(A: Algebra, act: HActionData, n: int, limit_rows: int, limit_cols: int):
    if act.dim != A.dim:
        raise DimensionMismatch("action and algebra dimensions differ")
    if n < 1:
        raise ValueError("n must be at least 1")
    rows = basis_size(n, act.m)
    if rows > limit_rows:
        raise SizeLimitExceeded(f"P^H_{n} has {rows} monomials (limit {limit_rows})")
    cols = A.dim ** (n + 1)
    if cols > limit_cols:
        raise SizeLimitExceeded(f"evaluation rows have {cols} columns (limit {limit_cols})")


# ------------------------------------------------------- evaluation space

@dataclass
class EvaluationSpace:
    """Row space W of the evaluation map in degree n, over one field."""

    n: int
    rank: int
    traces: tuple                        # one per partition of n (class order)
    over: str = field(compare=False)     # "p=<prime>" or "Q"
    monomials: tuple = field(compare=False, default=())   # HMonomials whose rows span W
    rows: object = field(compare=False, default=None)     # echelon rows on the support
    pivots: tuple = field(compare=False, default=())
    support: object = field(compare=False, default=None)


def _word_rows(arith, Y, gamma, d: int, n: int):
    """Basis words of V_n together with their actual rows."""
    m = len(gamma)
    words = [(j,) for j in range(m)]
    rows = arith.array(np.stack([G.T.ravel() for G in gamma]))
    ys = [arith.array(y) for y in Y]
    for k in range(1, n + 1):
        ech = arith.echelon(rows.shape[1])
        for s in range(0, rows.shape[0], _BLOCK):
            ech.add(rows[s:s + _BLOCK])
            if ech.full:
                break
        keep = ech.sources
        words = [words[i] for i in keep]
        rows = rows[keep] if keep else rows[:0]
        if k == n or not words:
            return words, rows
        r = rows.shape[0]
        flat = rows.reshape(-1, d)
        new_words, new_rows = [], []
        for j in range(m):
            new_words.extend(w + (j,) for w in words)
            new_rows.append(arith.matmul(flat, ys[j]).reshape(r, -1))
        words, rows = new_words, np.vstack(new_rows)


def _evaluation_space(A: Algebra, act: HActionData, n: int, arith, with_traces: bool) -> EvaluationSpace:
    d = A.dim
    gamma, Y = _tables(A, act)
    words, F = _word_rows(arith, Y, gamma, d, n)
    parts = partitions(n)
    if not words:
        return EvaluationSpace(n, 0, tuple(0 for _ in parts) if with_traces else (), _name(arith))
    perms = list(itertools.permutations(range(1, n + 1)))
    gathers = {sigma: perm_index(sigma, d) for sigma in perms}
    nonzero = (F != 0).any(axis=0)
    mask = np.zeros(d ** (n + 1), dtype=bool)
    for sigma in perms:
        mask |= nonzero[gathers[sigma]]
    Z = np.flatnonzero(mask)
    ech = arith.echelon(Z.size)
    labels = []
    for sigma in perms:
        ech.add(F[:, gathers[sigma][Z]])
        labels.extend(HMonomial(sigma, w) for w in words)
        if ech.full:
            break
    monomials = tuple(labels[i] for i in ech.sources)
    traces = ()
    if with_traces:
        pos = np.full(d ** (n + 1), -1, dtype=np.int64)
        pos[Z] = np.arange(Z.size)
        R = ech.rows
        piv = Z[np.array(ech.pivots, dtype=np.int64)]
        idx = np.arange(len(ech.pivots))
        out = []
        for mu in parts:
            cols = pos[perm_index(class_representative(mu), d)[piv]]
            # the support is S_n-stable, so cols never hits -1
            out.append(arith.integer(R[idx, cols].sum()))
        traces = tuple(out)
    return EvaluationSpace(n, ech.rank, traces, _name(arith), monomials, ech.rows,
                           tuple(ech.pivots), Z)


def _name(arith) -> str:
    return "Q" if arith.exact else f"p={arith.p}"


def evaluation_space(A: Algebra, act: HActionData, n: int, *, with_traces: bool = True,
                     exact: bool = False, threads: int = 1,
                     limit_rows: int = DEFAULT_BASIS_LIMIT,
                     limit_cols: int = DEFAULT_COLUMN_LIMIT) -> tuple[EvaluationSpace, str]:
    """Certified (rank, class traces) of W; returns the space and the path used."""
    _check_limits(A, act, n, limit_rows, limit_cols)

    def run_exact():
        return _evaluation_space(A, act, n, _Exact(), with_traces)

    if exact:
        return run_exact(), "exact"
    return certified(lambda p: _evaluation_space(A, act, n, _ModP(p), with_traces), run_exact,
                     threads=threads)


def monomial_row(A: Algebra, act: HActionData, mono: HMonomial) -> np.ndarray:
    """Exact evaluation row of a single monomial (object array of Fractions)."""
    d = A.dim
    gamma, Y = _tables(A, act)
    row = gamma[mono.ops[0]].T.ravel()
    for j in mono.ops[1:]:
        row = row.reshape(-1, d).dot(Y[j]).ravel()
    return row[perm_index(mono.sigma, d)]


# ---------------------------------------------------------------- results

@dataclass(frozen=True)
class CodimensionResult:
    n: int
    c: int
    method: str                      # "rank" or "cocharacter"
    path: str = "modular"            # how the rank was certified
    identity_basis: tuple | None = None


@dataclass(frozen=True)
class CocharacterResult:
    n: int
    multiplicities: dict             # partition -> count, every partition of n present
    colength: int
    codimension: int


def codimension_rank(A: Algebra, act: HActionData, n: int, *, exact: bool = False,
                     with_identities: bool = False, threads: int = 1,
                     limit_rows: int = DEFAULT_BASIS_LIMIT,
                     limit_cols: int = DEFAULT_COLUMN_LIMIT) -> CodimensionResult:
    """c^H_n(A) as the rank of the evaluation map on P^H_n."""
    space, path = evaluation_space(A, act, n, with_traces=False, exact=exact, threads=threads,
                                   limit_rows=limit_rows, limit_cols=limit_cols)
    basis = identity_basis(A, act, n, limit_rows=limit_rows) if with_identities else None
    return CodimensionResult(n=n, c=space.rank, method="rank", path=path, identity_basis=basis)


def identity_basis(A: Algebra, act: HActionData, n: int,
                   limit_rows: int = DEFAULT_BASIS_LIMIT) -> tuple[HPolynomial, ...]:
    """A basis of P^H_n ∩ Id^H(A) (exact kernel of the evaluation map)."""
    monos = enumerate_basis(n, act.m, limit_rows)
    M = np.stack([monomial_row(A, act, mono) for mono in monos])
    cols = np.flatnonzero((M != 0).any(axis=0))
    if cols.size:
        kernel = left_nullspace(M[:, cols].tolist())
    else:
        kernel = [tuple(Fraction(int(i == k)) for i in range(len(monos))) for k in range(len(monos))]
    return tuple(HPolynomial(n, act.m, {mono: c for mono, c in zip(monos, v) if c}) for v in kernel)


def _multiplicities(n: int, traces: Sequence[int]) -> dict:
    by_class = dict(zip(partitions(n), traces))
    out = {}
    for lam, m in multiplicity_from_character(n, by_class).items():
        if m.denominator != 1 or m < 0:
            raise NonIntegralMultiplicity(f"m{lam} = {m} is not a nonnegative integer")
        out[lam] = int(m)
    return out


def cocharacter_multiplicities(A: Algebra, act: HActionData, n: int, *, exact: bool = False,
                               threads: int = 1, limit_rows: int = DEFAULT_BASIS_LIMIT,
                               limit_cols: int = DEFAULT_COLUMN_LIMIT) -> CocharacterResult:
    """Multiplicities m(A, H, lambda) of the n-th cocharacter."""
    space, _ = evaluation_space(A, act, n, exact=exact, threads=threads,
                                limit_rows=limit_rows, limit_cols=limit_cols)
    mult = _multiplicities(n, space.traces)
    total = sum(mult[lam] * dim_irreducible(lam) for lam in mult)
    if total != space.rank:
        raise NonIntegralMultiplicity(f"sum m(lambda) f^lambda = {total} but c = {space.rank}")
    return CocharacterResult(n=n, multiplicities=mult, colength=sum(mult.values()), codimension=space.rank)


def codimension_cocharacter(A: Algebra, act: HActionData, n: int, **kwargs) -> CodimensionResult:
    res = cocharacter_multiplicities(A, act, n, **kwargs)
    c = sum(m * dim_irreducible(lam) for lam, m in res.multiplicities.items())
    return CodimensionResult(n=n, c=c, method="cocharacter")


# --------------------------------------------------------------- structure

@dataclass(frozen=True)
class HStructure:
    """J, A/J with its induced action, simple and H-simple components, a section."""

    algebra: Algebra
    action: HActionData
    radical: RadicalData
    quotient: Quotient
    quotient_action: HActionData | None
    decomposition: SemisimpleDecomposition | None
    components: tuple[HComponent, ...]
    section: Section | None

    @property
    def nilpotent(self) -> bool:
        return self.radical.J.dim == self.algebra.dim


def h_structure(A: Algebra, act: HActionData) -> HStructure:
    radical = jacobson_radical(A)
    if not is_h_invariant(radical.J, act):
        raise NotHInvariant("the Jacobson radical is not invariant under the action")
    Q = quotient(A, radical.J)
    if Q.algebra.dim == 0:
        return HStructure(A, act, radical, Q, None, None, (), None)
    qact = induced_quotient_action(A, act, Q)
    dec = simple_decomposition(Q.algebra)
    comps = h_simple_grouping(Q.algebra, dec, qact)
    section = _section(A, radical, Q, dec)
    return HStructure(A, act, radical, Q, qact, dec, tuple(comps), section)


@dataclass(frozen=True)
class ExponentResult:
    d: int
    witness: tuple             # component indices in chain order
    certificate: tuple         # a nonzero element of the final chain product
    nilpotent: bool
    component_dims: tuple = ()


def _orbit(A: Algebra, act: HActionData, vectors) -> Subspace:
    return Subspace.span([act.apply(j, v) for v in vectors for j in range(act.m)], A.dim)


def pi_exponent(A: Algebra, act: HActionData, section: Section | None = None,
                structure: HStructure | None = None, order: Sequence[int] | None = None) -> ExponentResult:
    """d = max sum dim B_{i_k} over chains (H k(B_i1)) A+ (H k(B_i2)) ... != 0.

    Indices in a chain are distinct; every ordering is tried.  ``order``
    permutes the component list (the result must not depend on it).
    """
    st = structure or h_structure(A, act)
    if st.nilpotent:
        return ExponentResult(d=0, witness=(), certificate=(), nilpotent=True)
    section = section or st.section
    comps = list(st.components)
    labels = list(range(len(comps)))
    if order is not None:
        comps = [comps[i] for i in order]
        labels = list(order)
    images = [_orbit(A, act, [section.apply(b) for b in comp.subspace.basis]) for comp in comps]
    dims = [comp.dim for comp in comps]
    full = Subspace.full(A.dim)
    best = (0, (), ())

    def extend(S: Subspace, used: tuple, total: int):
        nonlocal best
        cand = (total, tuple(labels[i] for i in used))
        if cand[0] > best[0] or (cand[0] == best[0] and (not best[1] or cand[1] < best[1])):
            best = (total, cand[1], S.basis[0])
        for k in range(len(comps)):
            if k in used:
                continue
            step = span_product(A, S, full) + S
            nxt = span_product(A, step, images[k])
            if not nxt.is_zero():
                extend(nxt, used + (k,), total + dims[k])

    for k in range(len(comps)):
        if not images[k].is_zero():
            extend(images[k], (k,), dims[k])
    d, witness, cert = best
    return ExponentResult(d=d, witness=witness, certificate=tuple(cert), nilpotent=False,
                          component_dims=tuple(c.dim for c in st.components))


# ---------------------------------------------------------- vanishing check

@dataclass
class VanishingReport:
    n: int
    d: int
    p: int
    constrained: tuple                   # partitions with sum_{k>d} lambda_k >= p
    multiplicities: dict
    violations: list = field(default_factory=list)
    symmetrizer_checked: tuple = ()      # partitions whose e*_T was applied

    @property
    def ok(self) -> bool:
        return not self.violations


def constrained_partitions(n: int, d: int, p: int) -> tuple:
    return tuple(lam for lam in partitions(n) if sum(lam[d:]) >= p)


def _exact_rows(A: Algebra, act: HActionData, monomials) -> np.ndarray:
    rows = [monomial_row(A, act, mono) for mono in monomials]
    if not rows:
        return np.zeros((0, A.dim ** 2), dtype=object)
    M = np.stack(rows)
    scale = 1
    for x in M.ravel():
        if x:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ints = np.array([int(x * scale) for x in M.ravel()], dtype=object).reshape(M.shape)
    return ints


def _symmetrizer_annihilates(rows: np.ndarray, T: Tableau, d: int) -> bool:
    """e*_T = b_T a_T applied to every row of W is zero."""
    bound = max((abs(int(x)) for x in rows.ravel()), default=0)
    R, C = row_group(T), column_group(T)
    if bound * len(R) * len(C) < 2**62:
        rows = rows.astype(np.int64)
    after_a = sum(rows[:, perm_index(pi, d)] for pi in R)
    after_b = sum(sign(pi) * after_a[:, perm_index(pi, d)] for pi in C)
    return not np.any(after_b != 0)


def verify_cocharacter_vanishing(A: Algebra, act: HActionData, n: int, *, tableau=None,
                                 strict: bool = False, threads: int = 1,
                                 limit_rows: int = DEFAULT_BASIS_LIMIT,
                                 limit_cols: int = DEFAULT_COLUMN_LIMIT) -> VanishingReport:
    """m(A,H,lambda) = 0 whenever sum_{k>d} lambda_k >= p, checked two ways."""
    st = h_structure(A, act)
    d = pi_exponent(A, act, structure=st).d
    p = st.radical.nilpotency_index
    constrained = constrained_partitions(n, d, p)
    space, _ = evaluation_space(A, act, n, threads=threads, limit_rows=limit_rows, limit_cols=limit_cols)
    mult = _multiplicities(n, space.traces)
    report = VanishingReport(n=n, d=d, p=p, constrained=constrained, multiplicities=mult)
    if constrained and space.rank:
        rows = _exact_rows(A, act, space.monomials)
        checked = []
        for lam in constrained:
            if mult[lam]:
                report.violations.append((lam, f"multiplicity {mult[lam]}"))
            T = tableau(lam) if callable(tableau) else canonical_tableau(lam)
            if not _symmetrizer_annihilates(rows, T, A.dim):
                report.violations.append((lam, "e*_T f is not an identity"))
            checked.append(lam)
        report.symmetrizer_checked = tuple(checked)
    else:
        for lam in constrained:
            if mult[lam]:
                report.violations.append((lam, f"multiplicity {mult[lam]}"))
        report.symmetrizer_checked = constrained
    if strict and report.violations:
        lam, why = report.violations[0]
        raise VanishingViolation(f"partition {lam}: {why}")
    return report


# ------------------------------------------------------------------ witness

def verify_witness(f: HPolynomial, sets: Sequence[Sequence[int]], A: Algebra, act: HActionData) -> bool:
    """f alternates in each set and is not an identity of A."""
    seen: set = set()
    sizes = {len(X) for X in sets}
    if len(sizes) > 1:
        raise ValueError("alternation sets must have equal size")
    for X in sets:
        if seen & set(X):
            raise ValueError("alternation sets must be disjoint")
        seen |= set(X)
    for X in sets:
        X = sorted(X)
        for a, b in zip(X, X[1:]):
            tau = list(range(1, f.n + 1))
            tau[a - 1], tau[b - 1] = b, a
            if sn_act(tau, f) != -1 * f:
                return False
    return not is_identity(f, A, act)


def standard_polynomial(n: int) -> HPolynomial:
    return alternate(HPolynomial.monomial(range(1, n + 1)), range(1, n + 1))


# ------------------------------------------------------------------ growth

@dataclass(frozen=True)
class GrowthRow:
    n: int
    c: int | None
    colength: int | None
    ratio: Fraction | None           # c_{n+1} / c_n
    root: float | None
    d: int
    flags: str


def growth_report(A: Algebra, act: HActionData, n_max: int, *, band: int = 3, band_from: int = 3,
                  threads: int = 1, limit_rows: int = DEFAULT_BASIS_LIMIT,
                  limit_cols: int = DEFAULT_COLUMN_LIMIT) -> list[GrowthRow]:
    """c^H_n, colength, growth ratio and n-th root for n = 1..n_max.

    The sandwich flag tests d^n / n^B <= c_n <= n^B d^n on this finite window
    only; it is evidence, never a proof of the asymptotics.
    """
    d = pi_exponent(A, act).d
    data = []
    for n in range(1, n_max + 1):
        try:
            space, _ = evaluation_space(A, act, n, threads=threads, limit_rows=limit_rows,
                                        limit_cols=limit_cols)
            mult = _multiplicities(n, space.traces)
            data.append((n, space.rank, sum(mult.values())))
        except SizeLimitExceeded:
            data.append((n, None, None))
    rows = []
    for k, (n, c, colength) in enumerate(data):
        nxt = data[k + 1][1] if k + 1 < len(data) else None
        ratio = Fraction(nxt, c) if c and nxt is not None else None
        root = c ** (1.0 / n) if c is not None else None
        if c is None:
            flag = "size-limit"
        elif n < band_from or d <= 1:
            flag = "sandwich:skip"
        else:
            ok = Fraction(d**n, n**band) <= c <= n**band * d**n
            flag = "sandwich:pass" if ok else "sandwich:fail"
        rows.append(GrowthRow(n, c, colength, ratio, root, d, flag))
    return rows


CSV_COLUMNS = ("n", "c", "colength", "ratio", "root", "d", "flags")


def growth_csv(rows: Sequence[GrowthRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        ratio = "" if r.ratio is None else f"{r.ratio.numerator}/{r.ratio.denominator}"
        root = "" if r.root is None else f"{r.root:.6f}"
        lines.append(",".join([str(r.n), "" if r.c is None else str(r.c),
                               "" if r.colength is None else str(r.colength), ratio, root,
                               str(r.d), r.flags]))
    return "\n".join(lines) + "\n"
