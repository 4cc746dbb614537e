"""Exact integer matrix utilities: Smith/Hermite normal forms, kernels,
saturation, and finite abelian quotients of lattices.

All arithmetic uses Python integers (arbitrary precision) or
fractions.Fraction; no floating point.  Matrices are tuples of row tuples.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Iterator, Optional, Sequence

from .errors import RankDefect, TooLarge

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]

DEFAULT_ENUM_CAP = 10**7
ENUM_CAP_ENV = "TWISTED_H1_ENUM_CAP"


def enum_cap() -> int:
    """Enumeration cap, overridable through the TWISTED_H1_ENUM_CAP env var."""
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None:
        return DEFAULT_ENUM_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError("enumeration cap must be positive")
    return cap


# ---------------------------------------------------------------------------
# basic matrix/vector helpers


def freeze(rows: Iterable[Iterable[int]]) -> Mat:
    return tuple(tuple(r) for r in rows)


def identity_matrix(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vector(n: int) -> Vec:
    return (0,) * n


def transpose(m: Sequence[Sequence[int]]) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]):
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def vec_add(u: Sequence[int], v: Sequence[int]):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence[int]):
    return tuple(c * a for a in v)


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form with unimodular transforms


def smith_normal_form(mat: Sequence[Sequence[int]]):
    """Return (D, U, Uinv, V, Vinv) with U*mat*V = D in Smith normal form.

    D is diagonal with non-negative entries in a divisibility chain; U and V
    are unimodular.  Pivots are chosen by minimal absolute value to limit
    coefficient growth.
    """
    a = [list(row) for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [list(r) for r in identity_matrix(m)]
    ui = [list(r) for r in identity_matrix(m)]
    v = [list(r) for r in identity_matrix(n)]
    vi = [list(r) for r in identity_matrix(n)]

    def row_swap(i, j):
        if i == j:
            return
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for row in ui:
            row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        if i == j:
            return
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    def row_addmul(i, j, c):
        # row_i += c * row_j
        if c == 0:
            return
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        for row in ui:
            row[j] -= c * row[i]

    def col_addmul(j, k, c):
        # col_j += c * col_k
        if c == 0:
            return
        for row in a:
            row[j] += c * row[k]
        for row in v:
            row[j] += c * row[k]
        vi[k] = [x - c * y for x, y in zip(vi[k], vi[j])]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for row in ui:
            row[i] = -row[i]

    for t in range(min(m, n)):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        while True:
            if a[t][t] < 0:
                row_neg(t)
            for i in range(t + 1, m):
                if a[i][t]:
                    row_addmul(i, t, -(a[i][t] // a[t][t]))
            rem = [i for i in range(t + 1, m) if a[i][t]]
            if rem:
                row_swap(t, min(rem, key=lambda i: abs(a[i][t])))
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    col_addmul(j, t, -(a[t][j] // a[t][t]))
            rem = [j for j in range(t + 1, n) if a[t][j]]
            if rem:
                col_swap(t, min(rem, key=lambda j: abs(a[t][j])))
                continue
            bad = None
            for i in range(t + 1, m):
                if any(a[i][j] % a[t][t] for j in range(t + 1, n)):
                    bad = i
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
    for i in range(min(m, n)):
        if a[i][i] < 0:
            row_neg(i)
    return freeze(a), freeze(u), freeze(ui), freeze(v), freeze(vi)


def diagonal_of(d: Mat) -> Vec:
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)))


def invariant_factor_list(mat: Sequence[Sequence[int]]) -> Vec:
    d, *_ = smith_normal_form(mat)
    return diagonal_of(d)


# ---------------------------------------------------------------------------
# Hermite normal form (row style) and canonical reduction modulo a lattice


def hnf(rows: Iterable[Sequence[int]]) -> Mat:
    """Canonical row Hermite form of the lattice spanned by the given rows.

    Pivots are positive, entries above a pivot are reduced into [0, pivot),
    zero rows are dropped.
    """
    a = [list(r) for r in rows if any(r)]
    if not a:
        return ()
    n = len(a[0])
    r = 0
    for c in range(n):
        live = [i for i in range(r, len(a)) if a[i][c]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda i: abs(a[i][c]))
            i0 = live[0]
            for i in live[1:]:
                q = a[i][c] // a[i0][c]
                a[i] = [x - q * y for x, y in zip(a[i], a[i0])]
            live = [i for i in range(r, len(a)) if a[i][c]]
        i0 = live[0]
        a[r], a[i0] = a[i0], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return freeze(a[:r])


def _pivot_col(row: Sequence[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def hnf_reduce(h: Mat, v: Sequence[int]) -> Vec:
    """Canonical representative of v modulo the lattice with HNF basis h."""
    w = list(v)
    for row in h:
        c = _pivot_col(row)
        q = w[c] // row[c]
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return tuple(w)


def lattice_contains(h: Mat, v: Sequence[int]) -> bool:
    return not any(hnf_reduce(h, v))


def lattices_equal(rows_a: Iterable[Sequence[int]], rows_b: Iterable[Sequence[int]]) -> bool:
    return hnf(rows_a) == hnf(rows_b)


# ---------------------------------------------------------------------------
# kernels and integral solving


def kernel_basis(mat: Sequence[Sequence[int]]) -> Mat:
    """Saturated basis of {x : mat @ x = 0}, rows in canonical HNF."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    d, _u, _ui, v, _vi = smith_normal_form(mat)
    diag = diagonal_of(d)
    cols = [j for j in range(n) if j >= len(diag) or diag[j] == 0]
    vt = transpose(v)
    return hnf(vt[j] for j in cols)


def solve_int(mat: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[Vec]:
    """One integral solution x of mat @ x = b, or None."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    d, u, _ui, v, _vi = smith_normal_form(mat)
    ub = mat_vec(u, b)
    diag = diagonal_of(d)
    y = [0] * n
    for i in range(m):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
    return mat_vec(v, y)


def solve_rational(mat: Sequence[Sequence[int]], b: Sequence) -> tuple[Fraction, ...]:
    """Unique rational solution of a full-column-rank system mat @ x = b."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    a = [[Fraction(x) for x in row] + [Fraction(bv)] for row, bv in zip(mat, b)]
    row = 0
    pivots = []
    for col in range(n):
        piv = next((i for i in range(row, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        a[row] = [x / a[row][col] for x in a[row]]
        for i in range(m):
            if i != row and a[i][col] != 0:
                c = a[i][col]
                a[i] = [x - c * y for x, y in zip(a[i], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    if len(pivots) < n or any(a[i][n] != 0 for i in range(row, m)):
        raise ValueError("system has no unique rational solution")
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = a[i][n]
    return tuple(x)


def invert_rational(mat: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a nonsingular square matrix, as Fractions."""
    n = len(mat)
    cols = []
    for j in range(n):
        e = [Fraction(1) if i == j else Fraction(0) for i in range(n)]
        cols.append(solve_rational(mat, e))
    return tuple(zip(*cols))


# ---------------------------------------------------------------------------
# finite abelian quotients


@dataclass(frozen=True)
class QuotientElement:
    """A class of a finite abelian lattice quotient.

    coords are reduced modulo the nontrivial invariant factors; rep is the
    canonical lift in the coordinates of the ambient basis; ambient is that
    lift expanded into the surrounding lattice.
    """

    coords: Vec
    rep: Vec
    ambient: Vec


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant-factor presentation of a finite quotient Z^k / L.

    invariant_factors keeps only factors > 1; cardinality is their product.
    lift_basis holds ambient-lattice representatives of the corresponding
    generators.
    """

    invariant_factors: Vec
    cardinality: int
    lift_basis: Mat
    ambient_basis: Mat
    _dim: int
    _proj: Mat          # y = proj @ x gives diagonal coordinates
    _diag: Vec          # all k diagonal entries, 1s included
    _gens_k: Mat        # lifts of the nontrivial generators, basis coords
    _sub_hnf: Mat       # HNF of the sublattice, basis coords

    def coords_of(self, x: Sequence[int]) -> Vec:
        """Quotient coordinates of a vector given in ambient-basis coords."""
        y = mat_vec(self._proj, x)
        return tuple(y[i] % self._diag[i] for i in range(self._dim) if self._diag[i] > 1)

    def rep_of_coords(self, coords: Sequence[int]) -> Vec:
        x = [0] * self._dim
        for c, g in zip(coords, self._gens_k):
            x = [a + c * b for a, b in zip(x, g)]
        return hnf_reduce(self._sub_hnf, x)

    def canonical_rep(self, x: Sequence[int]) -> Vec:
        return self.rep_of_coords(self.coords_of(x))

    def ambient_of(self, x_k: Sequence[int]) -> Vec:
        out = [0] * (len(self.ambient_basis[0]) if self.ambient_basis else 0)
        for c, row in zip(x_k, self.ambient_basis):
            out = [a + c * b for a, b in zip(out, row)]
        return tuple(out)

    def element_of(self, x: Sequence[int]) -> QuotientElement:
        coords = self.coords_of(x)
        rep = self.rep_of_coords(coords)
        return QuotientElement(coords, rep, self.ambient_of(rep))

    def identity(self) -> QuotientElement:
        return self.element_of(zero_vector(self._dim))


def quotient(ambient_basis: Iterable[Sequence[int]],
             sublattice_generators: Iterable[Sequence[int]]) -> FiniteAbelianGroup:
    """Finite abelian quotient of the lattice spanned by ambient_basis by the
    sublattice spanned by the generators.

    Generators must lie in the Z-span of the ambient basis; a rank-deficient
    sublattice raises RankDefect.
    """
    basis = freeze(ambient_basis)
    k = len(basis)
    gens = [tuple(g) for g in sublattice_generators]
    basis_cols = transpose(basis)
    coords = []
    for g in gens:
        c = solve_int(basis_cols, g)
        if c is None:
            raise ValueError("sublattice generator outside the span of the ambient basis")
        coords.append(c)
    if len(coords) < k:
        raise RankDefect("quotient has free rank: too few generators")
    m = transpose(coords)  # k x (num gens), columns are generators
    d, u, ui, _v, _vi = smith_normal_form(m)
    diag = list(diagonal_of(d)) + [0] * (k - min(len(m), len(m[0]) if m else 0))
    diag = diag[:k]
    if any(x == 0 for x in diag):
        raise RankDefect("quotient has free rank")
    ui_cols = transpose(ui)
    factors = tuple(x for x in diag if x > 1)
    gens_k = tuple(ui_cols[i] for i in range(k) if diag[i] > 1)
    sub = hnf(coords)
    lifts = []
    g = FiniteAbelianGroup(
        invariant_factors=factors,
        cardinality=prod(diag),
        lift_basis=(),
        ambient_basis=basis,
        _dim=k,
        _proj=u,
        _diag=tuple(diag),
        _gens_k=gens_k,
        _sub_hnf=sub,
    )
    lifts = tuple(g.ambient_of(hnf_reduce(sub, v)) for v in gens_k)
    object.__setattr__(g, "lift_basis", lifts)
    return g


def enumerate_elements(group: FiniteAbelianGroup, cap: Optional[int] = None) -> Iterator[QuotientElement]:
    """Every element exactly once, coords in lexicographic order."""
    limit = enum_cap() if cap is None else cap
    if group.cardinality > limit:
        raise TooLarge(
            f"group of order {group.cardinality} exceeds enumeration cap {limit}")
    for coords in itertools.product(*(range(d) for d in group.invariant_factors)):
        rep = group.rep_of_coords(coords)
        yield QuotientElement(coords, rep, group.ambient_of(rep))
