"""Exact linear algebra over the rationals and certified modular rank.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator). Vectors are tuples of Fractions; matrices are sequences of
rows. Subspaces are stored by their reduced row echelon basis, which makes
equal subspaces compare (and hash) equal.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch

Vector = tuple  # tuple[Fraction, ...]

# Primes just below 2**28.  Products of two residues stay below 2**56, so an
# int64 dot product of up to 64 terms cannot overflow.
PRIMES = (268435399, 268435367, 268435361, 268435337,
          268435331, 268435313, 268435291, 268435273)
PRIME_SET_A = PRIMES[0::2]
PRIME_SET_B = PRIMES[1::2]
_DOT_CHUNK = 64
_SPLIT = 14
_FLOAT_CHUNK = 2048


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floating point scalars are not accepted; use Fraction or 'p/q'")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return tuple(v)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    c = frac(c)
    return tuple(c * a for a in v)


def is_zero(v) -> bool:
    return not any(v)


def matvec(M: Sequence[Sequence[Fraction]], v: Vector) -> Vector:
    """``M @ v`` for a matrix given by rows."""
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in M)


def matmul(M, N):
    cols = list(zip(*N))
    return tuple(tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0))
                       for col in cols) for row in M)


def identity_matrix(n: int):
    return tuple(unit_vector(n, i) for i in range(n))


def transpose(M):
    return tuple(tuple(col) for col in zip(*M))


def to_rows(M) -> list[list[Fraction]]:
    return [[frac(x) for x in row] for row in M]


def _shape(M) -> tuple[int, int]:
    if isinstance(M, np.ndarray):
        return M.shape[0], (M.shape[1] if M.ndim > 1 else 0)
    rows = len(M)
    return rows, (len(M[0]) if rows else 0)


# ---------------------------------------------------------------- exact path

def rref(M, ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q.

    Pivots are chosen at the lowest available column and normalized to 1.
    Returns the nonzero rows and their pivot columns.
    """
    rows = [r for r in to_rows(M) if any(r)]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        prow = [x * inv for x in rows[r]]
        rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(M) -> int:
    """Exact rank over Q by Gauss-Jordan elimination."""
    return len(rref(M)[1])


def integer_rows(M) -> list[list[int]]:
    out = []
    for row in to_rows(M):
        den = math.lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * den) for x in row])
    return out


def bareiss_rank(M) -> int:
    """Exact rank by fraction-free (Bareiss) elimination on integers."""
    nrows, ncols = _shape(M)
    if nrows == 0 or ncols == 0:
        return 0
    A = np.empty((nrows, ncols), dtype=object)
    A[:, :] = integer_rows(M)
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        if r + 1 < nrows:
            lower = A[r + 1:, c:]
            A[r + 1:, c:] = (A[r, c] * lower - lower[:, :1] * A[r, c:]) // prev
        prev = A[r, c]
        r += 1
    return r


def nullspace(M, ncols: int | None = None) -> list[Vector]:
    """Basis of {x : M x = 0}."""
    R, pivots = rref(M, ncols)
    if ncols is None:
        ncols = _shape(M)[1]
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def left_nullspace(M) -> list[Vector]:
    """Basis of {y : y M = 0}."""
    nrows, _ = _shape(M)
    return nullspace(transpose(to_rows(M)) if nrows else [], nrows)


def solve_in_span(rows, v) -> Vector | None:
    """Coefficients c with sum c_i rows_i = v, or None if v is not in the span.

    ``rows`` must be linearly independent.
    """
    rows = to_rows(rows)
    k = len(rows)
    if k == 0:
        return () if is_zero(v) else None
    # Solve rows^T c = v by reducing the augmented system.
    aug = [list(col) + [frac(x)] for col, x in zip(zip(*rows), v)]
    R, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    c = [Fraction(0)] * k
    for row, pc in zip(R, pivots):
        c[pc] = row[k]
    return tuple(c)


class Subspace:
    """A subspace of Q^n stored by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis, pivots):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        vectors = [v for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        R, pivots = rref(vectors, ambient_dim)
        return cls(ambient_dim, R, pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity_matrix(ambient_dim), range(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def reduce(self, v) -> Vector:
        """Remainder of ``v`` after elimination against the basis."""
        v = list(vec(v))
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f:
                for j in range(pc, self.ambient_dim):
                    if row[j]:
                        v[j] -= f * row[j]
        return tuple(v)

    def contains(self, v) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
        return is_zero(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v) -> Vector:
        """Coordinates of ``v`` in the echelon basis; v must lie in the span."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(frac(v[pc]) for pc in self.pivots)

    def complement_indices(self) -> tuple[int, ...]:
        """Standard basis indices spanning a complement (the non-pivot columns)."""
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(
                f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        stacked = list(self.basis) + [vscale(-1, v) for v in other.basis]
        k = self.dim
        vectors = []
        for y in left_nullspace(stacked):
            w = zero_vector(self.ambient_dim)
            for c, row in zip(y[:k], self.basis):
                if c:
                    w = vadd(w, vscale(c, row))
            vectors.append(w)
        return Subspace.span(vectors, self.ambient_dim)

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains(v) for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    return U + V


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    return U.intersect(V)


def contains(U: Subspace, v) -> bool:
    return U.contains(v)


def subspace_product(U: Subspace, V: Subspace, mult: Callable[[Vector, Vector], Vector]) -> Subspace:
    """span{u*v : u in basis(U), v in basis(V)} for a bilinear ``mult``."""
    U._check(V)
    return Subspace.span([mult(u, v) for u in U.basis for v in V.basis], U.ambient_dim)


# -------------------------------------------------------------- modular path

class BadPrime(Exception):
    """The prime divides a denominator of the input data."""


def fraction_mod(x, p: int) -> int:
    x = frac(x)
    den = x.denominator % p
    if den == 0:
        raise BadPrime(p)
    return x.numerator * pow(den, -1, p) % p


def matrix_mod_p(M, p: int) -> np.ndarray:
    nrows, ncols = _shape(M)
    out = np.zeros((nrows, ncols), dtype=np.int64)
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            if x:
                out[i, j] = fraction_mod(x, p)
    return out


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p for residue arrays with p < 2^28.

    Runs through float64 BLAS: ``a`` is split into 14-bit halves so every
    partial product is below 2^42, and the inner dimension is chunked so
    no partial sum reaches 2^53.
    """
    inner = a.shape[-1]
    if inner <= _DOT_CHUNK:
        return (a @ b) % p
    hi = (a >> _SPLIT).astype(np.float64)
    lo = (a & ((1 << _SPLIT) - 1)).astype(np.float64)
    bf = b.astype(np.float64)
    out_hi = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    out_lo = np.zeros_like(out_hi)
    for s in range(0, inner, _FLOAT_CHUNK):
        out_hi = (out_hi + (hi[..., s:s + _FLOAT_CHUNK] @ bf[s:s + _FLOAT_CHUNK]).astype(np.int64)) % p
        out_lo = (out_lo + (lo[..., s:s + _FLOAT_CHUNK] @ bf[s:s + _FLOAT_CHUNK]).astype(np.int64)) % p
    return (out_hi * (1 << _SPLIT) + out_lo) % p


def rref_mod_p(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(p). Returns (nonzero rows, pivots)."""
    M = np.array(M, dtype=np.int64) % p
    nrows, ncols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), -1, p)
        M[r, c:] = M[r, c:] * inv % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit, c:] = (M[hit, c:] - np.outer(col[hit], M[r, c:])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank_mod_p(M, p: int) -> int:
    if not isinstance(M, np.ndarray) or M.dtype != np.int64:
        M = matrix_mod_p(M, p)
    if M.size == 0:
        return 0
    return len(rref_mod_p(M, p)[1])


class EchelonModP:
    """Row space over GF(p) grown incrementally by blocks of rows.

    With ``track_sources`` the indices (in order of addition) of input rows
    forming a basis of the row space are recorded in ``sources``.
    """

    def __init__(self, ncols: int, p: int, track_sources: bool = False):
        self.ncols = ncols
        self.p = p
        self.track_sources = track_sources
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self.sources: list[int] = []
        self._seen = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def add(self, block: np.ndarray) -> None:
        p = self.p
        block = np.asarray(block, dtype=np.int64) % p
        offset = self._seen
        self._seen += block.shape[0]
        if self.full or block.shape[0] == 0:
            return
        if self.pivots:
            block = (block - matmul_mod(block[:, self.pivots], self.rows, p)) % p
        keep = np.flatnonzero(block.any(axis=1))
        if keep.size == 0:
            return
        block = block[keep]
        new_rows, new_piv = rref_mod_p(block, p)
        if self.track_sources:
            # row rank profile: pivot columns of the transpose
            profile = rref_mod_p(block.T, p)[1]
            self.sources.extend(offset + int(keep[i]) for i in profile)
        if self.pivots:
            coeff = self.rows[:, new_piv]
            self.rows = (self.rows - matmul_mod(coeff, new_rows, p)) % p
        rows = np.vstack([self.rows, new_rows])
        pivots = self.pivots + new_piv
        order = np.argsort(pivots, kind="stable")
        self.rows = rows[order]
        self.pivots = [pivots[i] for i in order]


class ExactEchelon:
    """Exact counterpart of :class:`EchelonModP` (object arrays of Fractions)."""

    def __init__(self, ncols: int, track_sources: bool = False):
        self.ncols = ncols
        self.track_sources = track_sources
        self.rows = np.zeros((0, ncols), dtype=object)
        self.pivots: list[int] = []
        self.sources: list[int] = []
        self._seen = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def full(self) -> bool:
        return self.rank == self.ncols

    def add(self, block) -> None:
        for row in block:
            idx = self._seen
            self._seen += 1
            if self.full:
                continue
            row = np.array([frac(x) for x in row], dtype=object)
            if self.pivots:
                row = row - row[self.pivots].dot(self.rows)
            nz = np.flatnonzero(row != 0)
            if nz.size == 0:
                continue
            c = int(nz[0])
            row = row / row[c]
            if self.pivots:
                self.rows = self.rows - np.outer(self.rows[:, c], row)
            k = int(np.searchsorted(self.pivots, c))
            self.rows = np.insert(self.rows, k, row, axis=0)
            self.pivots.insert(k, c)
            self.sources.append(idx)


def certified(compute: Callable[[int], object], exact: Callable[[], object],
              threads: int = 1, prime_sets=(PRIME_SET_A, PRIME_SET_B)):
    """Run ``compute`` modulo one prime from each of two disjoint prime sets.

    Within a set the first prime not dividing any denominator is used.  If
    both sides agree their common value is returned; otherwise (or if a set
    runs out of primes) ``exact()`` decides.  Returns ``(value, path)`` with
    path ``"modular"`` or ``"exact"``.
    """
    def side(primes):
        for p in primes:
            try:
                return compute(p)
            except BadPrime:
                continue
        return BadPrime

    if threads > 1:
        with ThreadPoolExecutor(max_workers=min(threads, len(prime_sets))) as pool:
            results = list(pool.map(side, prime_sets))
    else:
        results = [side(ps) for ps in prime_sets]
    first = results[0]
    if first is not BadPrime and all(_same(first, r) for r in results[1:]):
        return first, "modular"
    return exact(), "exact"


def _same(a, b) -> bool:
    if b is BadPrime:
        return False
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def multimodular_rank_certificate(M, threads: int = 1) -> tuple[int, str]:
    """Rank of a rational matrix with the path that certified it."""
    nrows, ncols = _shape(M)
    if nrows == 0 or ncols == 0:
        return 0, "modular"
    return certified(lambda p: rank_mod_p(matrix_mod_p(M, p), p),
                     lambda: bareiss_rank(M), threads=threads)


def multimodular_rank(M, threads: int = 1) -> int:
    """Exact rank of a rational matrix via certified modular reduction."""
    return multimodular_rank_certificate(M, threads)[0]
