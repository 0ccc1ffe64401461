"""Finite-dimensional associative algebras given by structure constants.

Besides products this module computes the Jacobson radical, the center,
the Wedderburn-Artin decomposition of a split semisimple quotient,
lifts of idempotents, and multiplicative sections A/J -> A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AssociativityError, HopfPIError, NotApproxIdempotent, SplitFailure, ValidationError
from .linalg import (
    Subspace, Vector, frac, is_zero, left_nullspace, nullspace, solve_in_span, unit_vector,
    vadd, vec, vscale, vsub, zero_vector,
)


class Algebra:
    """An associative algebra over Q with basis e_0, ..., e_{dim-1}.

    ``products`` maps ``(i, j)`` to the coordinates of ``e_i * e_j``, either
    as a full vector or as a ``{k: coefficient}`` mapping. Missing pairs
    multiply to zero.
    """

    def __init__(self, dim: int, products: Mapping, labels: Sequence[str] | None = None,
                 unit=None, name: str = "", check: bool = True):
        self.dim = dim
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValidationError(f"{len(self.labels)} labels for dimension {dim}")
        table = [[() for _ in range(dim)] for _ in range(dim)]
        for (i, j), value in products.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValidationError(f"product index ({i}, {j}) out of range")
            items = value.items() if isinstance(value, Mapping) else enumerate(value)
            entries = []
            for k, c in items:
                c = frac(c)
                if not 0 <= k < dim:
                    raise ValidationError(f"product coordinate {k} out of range")
                if c:
                    entries.append((k, c))
            table[i][j] = tuple(sorted(entries))
        self._table = tuple(tuple(row) for row in table)
        self.unit = vec(unit) if unit is not None else None
        if check:
            bad = find_associativity_violation(self)
            if bad is not None:
                raise AssociativityError(bad)
            if self.unit is not None and not self._is_unit(self.unit):
                raise ValidationError("declared unit does not act as identity")

    @classmethod
    def from_matrices(cls, matrices, labels=None, name: str = "", unit=None) -> "Algebra":
        """Subalgebra of a matrix algebra spanned by the given basis matrices."""
        flat = [vec(x for row in m for x in row) for m in matrices]
        size = len(matrices[0])
        products = {}
        for i, a in enumerate(matrices):
            for j, b in enumerate(matrices):
                prod = [[sum((frac(a[r][t]) * frac(b[t][c]) for t in range(size)), Fraction(0))
                         for c in range(size)] for r in range(size)]
                coords = solve_in_span(flat, [x for row in prod for x in row])
                if coords is None:
                    raise ValidationError("basis matrices are not closed under multiplication")
                if any(coords):
                    products[i, j] = coords
        return cls(len(matrices), products, labels=labels, name=name, unit=unit)

    # -- products -------------------------------------------------------

    @property
    def structure_constants(self) -> dict[tuple[int, int, int], Fraction]:
        return {(i, j, k): c for i, row in enumerate(self._table)
                for j, entries in enumerate(row) for k, c in entries}

    def product_of_basis(self, i: int, j: int) -> Vector:
        out = [Fraction(0)] * self.dim
        for k, c in self._table[i][j]:
            out[k] = c
        return tuple(out)

    def multiply(self, a, b) -> Vector:
        out = [Fraction(0)] * self.dim
        table = self._table
        for i, x in enumerate(a):
            if not x:
                continue
            row = table[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in row[j]:
                    out[k] += xy * c
        return tuple(out)

    def product(self, *elements) -> Vector:
        result = elements[0]
        for e in elements[1:]:
            result = self.multiply(result, e)
        return result

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def zero(self) -> Vector:
        return zero_vector(self.dim)

    def left_matrix(self, a):
        """Matrix (rows) of x -> a*x."""
        cols = [self.multiply(a, self.basis_vector(j)) for j in range(self.dim)]
        return tuple(tuple(col[k] for col in cols) for k in range(self.dim))

    def trace_left(self, a) -> Fraction:
        return sum((self.multiply(a, self.basis_vector(j))[j] for j in range(self.dim)), Fraction(0))

    def _is_unit(self, u) -> bool:
        return all(self.multiply(u, self.basis_vector(i)) == self.basis_vector(i)
                   and self.multiply(self.basis_vector(i), u) == self.basis_vector(i)
                   for i in range(self.dim))

    def find_unit(self) -> Vector | None:
        """The unit element if the algebra is unital, else None."""
        if self.unit is not None:
            return self.unit
        if self.dim == 0:
            return ()
        # Solve u*e_i = e_i and e_i*u = e_i for u.
        rows, rhs = [], []
        for i in range(self.dim):
            for side in (0, 1):
                for out in range(self.dim):
                    coeffs = []
                    for k in range(self.dim):
                        p = self.product_of_basis(k, i) if side == 0 else self.product_of_basis(i, k)
                        coeffs.append(p[out])
                    rows.append(coeffs + [Fraction(int(out == i))])
        sol = _solve_affine(rows, self.dim)
        return sol

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.dim == other.dim and self._table == other._table
                and self.labels == other.labels and self.unit == other.unit)

    def __hash__(self):
        return hash((self.dim, self._table))

    def __repr__(self):
        return f"Algebra({self.name or 'unnamed'}, dim={self.dim})"


def _solve_affine(rows, n) -> Vector | None:
    """Solve [M | b] for a particular solution, or None."""
    from .linalg import rref
    R, pivots = rref(rows, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return tuple(x)


def multiply(A: Algebra, a, b) -> Vector:
    return A.multiply(a, b)


def find_associativity_violation(A: Algebra) -> tuple[int, int, int] | None:
    """First basis triple (lex order) with (e_i e_j) e_k != e_i (e_j e_k)."""
    basis = [A.basis_vector(i) for i in range(A.dim)]
    prods = [[A.product_of_basis(i, j) for j in range(A.dim)] for i in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            for k in range(A.dim):
                if A.multiply(prods[i][j], basis[k]) != A.multiply(basis[i], prods[j][k]):
                    return (i, j, k)
    return None


def check_associativity(A: Algebra) -> None:
    bad = find_associativity_violation(A)
    if bad is not None:
        raise AssociativityError(bad)


def span_product(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace.span([A.multiply(u, v) for u in U.basis for v in V.basis], A.dim)


# ----------------------------------------------------------------- radical

@dataclass(frozen=True)
class RadicalData:
    J: Subspace
    nilpotency_index: int
    powers: tuple = ()  # J^1, J^2, ..., J^p = 0


def jacobson_radical(A: Algebra) -> RadicalData:
    """Radical by Dickson's trace-form criterion (characteristic 0).

    J = {a : Tr(L_{ab}) = 0 for all b in A^+}, traces taken on the regular
    representation; L_x for x in A has the same trace on A and on A^+.
    """
    d = A.dim
    traces = [A.trace_left(A.basis_vector(k)) for k in range(d)]
    form = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(sum((c * traces[k] for k, c in A._table[i][j]), Fraction(0)))
        row.append(traces[i])
        form.append(row)
    J = Subspace.span(left_nullspace(form), d) if d else Subspace.zero(0)
    powers = [J]
    while not powers[-1].is_zero():
        powers.append(span_product(A, powers[-1], J))
    return RadicalData(J=J, nilpotency_index=len(powers), powers=tuple(powers))


def is_nilpotent(A: Algebra, radical: RadicalData | None = None) -> bool:
    radical = radical or jacobson_radical(A)
    return radical.J.dim == A.dim


# ---------------------------------------------------------------- quotient

@dataclass(frozen=True)
class Quotient:
    """A/I for a two-sided ideal I, with basis the images of e_i, i in ``indices``."""

    algebra: Algebra
    ideal: Subspace
    indices: tuple[int, ...]

    def project(self, a) -> Vector:
        r = self.ideal.reduce(a)
        return tuple(r[i] for i in self.indices)

    def lift(self, s) -> Vector:
        """The linear (not multiplicative) lift placing coordinates on ``indices``."""
        out = [Fraction(0)] * self.ideal.ambient_dim
        for i, x in zip(self.indices, s):
            out[i] = frac(x)
        return tuple(out)


def quotient(A: Algebra, I: Subspace, name: str = "") -> Quotient:
    idx = I.complement_indices()
    products = {}
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            r = I.reduce(A.product_of_basis(i, j))
            coords = tuple(r[k] for k in idx)
            if any(coords):
                products[a, b] = coords
    S = Algebra(len(idx), products, labels=[A.labels[i] for i in idx],
                name=name or f"{A.name}/J", check=False)
    return Quotient(algebra=S, ideal=I, indices=idx)


# ------------------------------------------------------------------ center

def center(A: Algebra) -> Subspace:
    """{z : z e_i = e_i z for all i}."""
    d = A.dim
    rows = []
    for i in range(d):
        for out in range(d):
            rows.append([A.product_of_basis(k, i)[out] - A.product_of_basis(i, k)[out]
                         for k in range(d)])
    return Subspace.span(nullspace(rows, d), d)


# ---------------------------------------------------- semisimple structure

def _poly_eval(A: Algebra, coeffs, y, one) -> Vector:
    """Horner evaluation of sum coeffs[k] y^k (coeffs low to high)."""
    acc = zero_vector(A.dim)
    for c in reversed(coeffs):
        acc = vadd(A.multiply(acc, y), vscale(c, one))
    return acc


def minimal_polynomial(A: Algebra, y, one) -> list[Fraction]:
    """Monic minimal polynomial of y in the unital subalgebra with unit ``one``.

    Coefficients low to high.
    """
    powers = [one]
    while True:
        nxt = A.multiply(powers[-1], y)
        coeffs = solve_in_span(powers, nxt)
        if coeffs is not None:
            return [-c for c in coeffs] + [Fraction(1)]
        powers.append(nxt)


def _factor_rational(coeffs):
    """Factor a rational polynomial. Returns (linear roots with multiplicity, has_other)."""
    import sympy
    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
                      x, domain="QQ")
    _, factors = poly.factor_list()
    roots, other = [], False
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.append((Fraction(int(r.p), int(r.q)), mult))
        else:
            other = True
    return roots, other


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _poly_divmod(p, q):
    p = list(p)
    out = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    while len(p) >= len(q) and any(p):
        shift = len(p) - len(q)
        f = p[-1] / q[-1]
        out[shift] = f
        for i, c in enumerate(q):
            p[i + shift] -= f * c
        p.pop()
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return out, p


def _poly_gcdex(a, b):
    """(s, t) with s a + t b = 1 for coprime rational polynomials."""
    r0, r1 = list(a), list(b)
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    if len(r0) != 1 or r0[0] == 0:
        raise ValueError("polynomials are not coprime")
    inv = 1 / r0[0]
    return [c * inv for c in s0], [c * inv for c in t0]


def _poly_sub(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)]
    return [Fraction(c) for c in out]


def _primary_idempotent(A: Algebra, y, one, root: Fraction, minpoly) -> Vector:
    """Idempotent projecting onto the generalized root-eigenspace of y."""
    lin = [-root, Fraction(1)]
    power, rest = [Fraction(1)], list(minpoly)
    while True:
        q, r = _poly_divmod(rest, lin)
        if any(r):
            break
        power, rest = _poly_mul(power, lin), q
    if len(rest) == 1:
        return one
    _, t = _poly_gcdex(power, rest)
    return _poly_eval(A, _poly_mul(t, rest), y, one)


@dataclass(frozen=True)
class SimpleComponent:
    """A simple ideal of a split semisimple algebra with a full set of matrix units."""

    subspace: Subspace
    central_idempotent: Vector
    degree: int  # the component is isomorphic to M_degree(Q)
    matrix_units: tuple  # matrix_units[i][j] as algebra elements


@dataclass(frozen=True)
class SemisimpleDecomposition:
    components: tuple[SimpleComponent, ...]

    @property
    def central_idempotents(self) -> tuple:
        return tuple(c.central_idempotent for c in self.components)

    @property
    def subspaces(self) -> tuple[Subspace, ...]:
        return tuple(c.subspace for c in self.components)


def _central_idempotents(S: Algebra, one) -> list[Vector]:
    Z = center(S)
    idems = [one]
    for z in Z.basis:
        refined = []
        for e in idems:
            y = S.multiply(e, z)
            minpoly = minimal_polynomial(S, y, e)
            if len(minpoly) == 2:
                refined.append(e)
                continue
            roots, other = _factor_rational(minpoly)
            if other or sum(m for _, m in roots) != len(minpoly) - 1:
                raise SplitFailure("center has irrational eigenvalues; quotient does not split over Q")
            for root, _ in roots:
                refined.append(_primary_idempotent(S, y, e, root, minpoly))
        idems = refined
    return idems


def _corner_candidates(basis):
    yield from basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            yield vadd(basis[i], basis[j])
            yield vadd(basis[i], vscale(2, basis[j]))


def _primitive_idempotent(S: Algebra, e) -> Vector:
    """A primitive idempotent below e in a split simple component."""
    while True:
        corner = Subspace.span([S.product(e, S.basis_vector(i), e) for i in range(S.dim)], S.dim)
        if corner.dim == 1:
            return e
        for y in _corner_candidates(list(corner.basis)):
            minpoly = minimal_polynomial(S, y, e)
            if len(minpoly) <= 2:
                continue
            roots, _ = _factor_rational(minpoly)
            if not roots:
                continue
            f = _primary_idempotent(S, y, e, roots[0][0], minpoly)
            if f != e and not is_zero(f):
                e = f
                break
        else:
            raise SplitFailure("no rational idempotent found; simple component does not split over Q")


def _matrix_units(S: Algebra, comp: Subspace, c) -> tuple[int, tuple]:
    f = _primitive_idempotent(S, c)
    V = Subspace.span([S.multiply(b, f) for b in comp.basis], S.dim)
    k = V.dim
    if k * k != comp.dim:
        raise SplitFailure(f"component of dimension {comp.dim} is not a full matrix algebra over Q")
    vbasis = list(Subspace.span([f], S.dim).basis)
    for v in V.basis:
        if not Subspace.span(vbasis, S.dim).contains(v):
            vbasis.append(v)
    # rho(b) = matrix of left multiplication by b on V in the basis vbasis
    rho = []
    for b in comp.basis:
        images = [S.multiply(b, v) for v in vbasis]
        cols = [solve_in_span(vbasis, w) for w in images]
        rho.append([cols[j][i] for i in range(k) for j in range(k)])
    units = []
    for i in range(k):
        row = []
        for j in range(k):
            target = [Fraction(int(r == i and s == j)) for r in range(k) for s in range(k)]
            coeffs = solve_in_span(rho, target)
            if coeffs is None:
                raise SplitFailure("left regular action on a minimal left ideal is not bijective")
            el = zero_vector(S.dim)
            for cf, b in zip(coeffs, comp.basis):
                if cf:
                    el = vadd(el, vscale(cf, b))
            row.append(el)
        units.append(tuple(row))
    return k, tuple(units)


def simple_decomposition(S: Algebra) -> SemisimpleDecomposition:
    """Split semisimple algebra -> simple components with matrix units.

    Components are ordered by decreasing dimension, ties by first pivot index.
    """
    if not jacobson_radical(S).J.is_zero():
        raise ValueError("simple_decomposition requires a semisimple algebra")
    if S.dim == 0:
        return SemisimpleDecomposition(components=())
    one = S.find_unit()
    if one is None:
        raise HopfPIError("semisimple algebra without unit")
    idems = _central_idempotents(S, one)
    comps = []
    for c in idems:
        sub = Subspace.span([S.multiply(c, S.basis_vector(i)) for i in range(S.dim)], S.dim)
        comps.append((sub, c))
    comps.sort(key=lambda t: (-t[0].dim, t[0].pivots[0]))
    out = []
    for sub, c in comps:
        k, units = _matrix_units(S, sub, c)
        out.append(SimpleComponent(subspace=sub, central_idempotent=c, degree=k, matrix_units=units))
    return SemisimpleDecomposition(components=tuple(out))


# ----------------------------------------------------- lifting and sections

def lift_idempotent(A: Algebra, e0, radical: RadicalData | None = None) -> Vector:
    """Lift e0 with e0^2 - e0 in J to an exact idempotent congruent to e0 mod J."""
    radical = radical or jacobson_radical(A)
    e = vec(e0)
    if not radical.J.contains(vsub(A.multiply(e, e), e)):
        raise NotApproxIdempotent("e0^2 - e0 does not lie in the radical")
    steps = math.ceil(math.log2(radical.nilpotency_index)) + 1 if radical.nilpotency_index > 1 else 1
    for _ in range(steps + 1):
        e2 = A.multiply(e, e)
        if e2 == e:
            return e
        e3 = A.multiply(e2, e)
        e = vsub(vscale(3, e2), vscale(2, e3))
    raise HopfPIError("idempotent lifting did not converge")  # unreachable for nilpotent J


@dataclass(frozen=True)
class Section:
    """A multiplicative linear map kappa: A/J -> A with pi o kappa = id."""

    quotient: Quotient
    images: tuple  # images[b] = kappa(basis vector b of A/J)

    def apply(self, s) -> Vector:
        out = zero_vector(self.quotient.ideal.ambient_dim)
        for c, img in zip(s, self.images):
            if c:
                out = vadd(out, vscale(c, img))
        return out

    @property
    def matrix(self):
        """kappa as a dim(A) x dim(A/J) matrix (rows)."""
        return tuple(tuple(img[r] for img in self.images) for r in range(len(self.images[0]) if self.images else 0))

    def check(self, A: Algebra) -> None:
        S = self.quotient.algebra
        for b, img in enumerate(self.images):
            if self.quotient.project(img) != S.basis_vector(b):
                raise HopfPIError(f"pi(kappa(e{b})) != e{b}")
        for a in range(S.dim):
            for b in range(S.dim):
                lhs = self.apply(S.product_of_basis(a, b))
                if lhs != A.multiply(self.images[a], self.images[b]):
                    raise HopfPIError(f"kappa is not multiplicative on quotient basis pair ({a}, {b})")


@dataclass(frozen=True)
class WedderburnData:
    """Everything derived from the radical: J, A/J, its decomposition, a section."""

    radical: RadicalData
    quotient: Quotient
    decomposition: SemisimpleDecomposition
    section: Section = field(default=None)


def _corner(A: Algebra, F, x) -> Vector:
    """(1 - F) x (1 - F) computed inside A."""
    Fx = A.multiply(F, x)
    xF = A.multiply(x, F)
    return vadd(vsub(vsub(x, Fx), xF), A.multiply(Fx, F))


def _corner_inverse(A: Algebra, f, w, nil_index: int) -> Vector:
    """Inverse of w = f + n (n nilpotent) in the corner algebra fAf."""
    n = vsub(w, f)
    acc, term = f, f
    for _ in range(nil_index + 1):
        term = vscale(-1, A.multiply(term, n))
        if is_zero(term):
            break
        acc = vadd(acc, term)
    return acc


def wedderburn_decomposition(A: Algebra) -> WedderburnData:
    radical = jacobson_radical(A)
    Q = quotient(A, radical.J)
    dec = simple_decomposition(Q.algebra)
    section = _section(A, radical, Q, dec)
    return WedderburnData(radical=radical, quotient=Q, decomposition=dec, section=section)


def wedderburn_section(A: Algebra) -> Section:
    """A multiplicative section kappa: A/J -> A (Wedderburn-Mal'cev)."""
    return wedderburn_decomposition(A).section


def _section(A: Algebra, radical: RadicalData, Q: Quotient, dec: SemisimpleDecomposition) -> Section:
    S = Q.algebra
    if radical.J.is_zero():
        section = Section(quotient=Q, images=tuple(Q.lift(S.basis_vector(b)) for b in range(S.dim)))
        section.check(A)
        return section
    p = radical.nilpotency_index
    F = A.zero()
    lifted_units = []
    diag = []
    for comp in dec.components:
        fs = []
        for i in range(comp.degree):
            y = _corner(A, F, Q.lift(comp.matrix_units[i][i]))
            f = lift_idempotent(A, y, radical)
            F = vadd(F, f)
            fs.append(f)
        diag.append(fs)
    for comp, fs in zip(dec.components, diag):
        k = comp.degree
        col = [fs[0]]  # e_{i1}
        row = [fs[0]]  # e_{1j}
        for j in range(1, k):
            u = A.product(fs[0], Q.lift(comp.matrix_units[0][j]), fs[j])
            v = A.product(fs[j], Q.lift(comp.matrix_units[j][0]), fs[0])
            w = A.multiply(u, v)
            v = A.multiply(v, _corner_inverse(A, fs[0], w, p))
            row.append(u)
            col.append(v)
        units = tuple(tuple(fs[0] if i == j == 0 else A.multiply(col[i], row[j]) for j in range(k))
                      for i in range(k))
        lifted_units.append(units)
    # express each quotient basis vector in matrix units and map across
    qunits, aunits = [], []
    for comp, lifted in zip(dec.components, lifted_units):
        for i in range(comp.degree):
            for j in range(comp.degree):
                qunits.append(comp.matrix_units[i][j])
                aunits.append(lifted[i][j])
    images = []
    for b in range(S.dim):
        coeffs = solve_in_span(qunits, S.basis_vector(b))
        img = A.zero()
        for c, u in zip(coeffs, aunits):
            if c:
                img = vadd(img, vscale(c, u))
        images.append(img)
    section = Section(quotient=Q, images=tuple(images))
    section.check(A)
    return section


def conjugate_section(A: Algebra, section: Section, j) -> Section:
    """kappa'(x) = (1 + j) kappa(x) (1 + j)^{-1} for j in J; again a section."""
    J = section.quotient.ideal
    j = vec(j)
    if not J.contains(j):
        raise ValueError("conjugating element must lie in the radical")
    # (1 + j)^{-1} = 1 + jinv with jinv = sum_{k>=1} (-j)^k
    jinv, term = A.zero(), A.zero()
    term = vscale(-1, j)
    while not is_zero(term):
        jinv = vadd(jinv, term)
        term = vscale(-1, A.multiply(term, j))
    images = []
    for x in section.images:
        jx = A.multiply(j, x)
        images.append(vadd(vadd(vadd(x, jx), A.multiply(x, jinv)), A.multiply(jx, jinv)))
    out = Section(quotient=section.quotient, images=tuple(images))
    out.check(A)
    return out
